#include "quadperm/prove.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quadperm {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ManifestEntry {
  std::string id, file, conclusion;
};

std::vector<ManifestEntry> load_manifest(const std::string& scripts_dir) {
  nlohmann::json manifest =
      nlohmann::json::parse(slurp(scripts_dir + "/manifest.json"));
  std::vector<ManifestEntry> entries;
  for (const auto& s : manifest.at("scripts"))
    entries.push_back(ManifestEntry{s.at("id").get<std::string>(),
                                    s.at("file").get<std::string>(),
                                    s.value("conclusion", "")});
  return entries;
}

}  // namespace

std::vector<std::string> corpus_script_ids(const std::string& scripts_dir) {
  std::vector<std::string> ids;
  for (const auto& e : load_manifest(scripts_dir)) ids.push_back(e.id);
  return ids;
}

ProveRun run_prove(const std::string& scripts_dir, const std::string& id,
                   int checks, std::uint64_t seed) {
  auto entries = load_manifest(scripts_dir);
  std::vector<ManifestEntry> selected;
  if (id == "all") {
    selected = entries;
  } else {
    for (const auto& e : entries)
      if (e.id == id) selected.push_back(e);
    if (selected.empty()) throw UnknownScript(id);
  }

  auto resolver = [&](const std::string& name) {
    return slurp(scripts_dir + "/" + name);
  };

  ProveRun run;
  for (const auto& e : selected) {
    ProveResult res;
    res.conclusion = e.conclusion;
    sym::ProofScript script =
        sym::parse_script(e.id, slurp(scripts_dir + "/" + e.file), resolver);
    sym::ScriptRunner runner;
    res.report = runner.run(script);
    try {
      res.resultant_checks = sym::cross_check_resultants(
          runner.resultant_instances(), checks, seed);
      res.resultant_checks_ok = true;
    } catch (const Error&) {
      res.resultant_checks_ok = false;
    }
    run.results.push_back(std::move(res));
  }
  return run;
}

}  // namespace quadperm
