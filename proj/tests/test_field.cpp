#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "quadperm/field.hpp"
#include "quadperm/rng.hpp"

using namespace quadperm;

TEST_CASE("default field specs are valid for m = 1..16") {
  for (int m = 1; m <= 16; ++m) {
    FieldSpec fs = FieldSpec::make(m);
    CHECK(fs.q() == (1u << m));
    CHECK(gf2_poly_irreducible(fs.modulus(), m));
    CHECK(fs.trace(fs.k()) == 1);
  }
}

TEST_CASE("construction rejects reducible moduli and trace-0 constants") {
  CHECK_THROWS_AS(FieldSpec::make(3, 0x9, 1), NotIrreducible);   // x^3+1
  CHECK_THROWS_AS(FieldSpec::make(4, 0x13, 1), BadTowerConstant);  // trace(1)=0
}

TEST_CASE("base arithmetic examples at m=3") {
  FieldSpec fs = FieldSpec::make(3);
  CHECK(fs.modulus() == 0xB);
  // X * X^2 = X + 1 since X^3 = X + 1
  CHECK(fs.mul(0x2, 0x4) == 0x3);
  CHECK(fs.inv(1) == 1);
  for (Bits x = 0; x < 8; ++x) {
    Bits s = fs.sqrt(x);
    CHECK(fs.mul(s, s) == x);
  }
  CHECK_THROWS_AS(fs.inv(0), InversionOfZero);
}

TEST_CASE("pow handles zero base and large exponents") {
  FieldSpec fs = FieldSpec::make(4);
  CHECK(fs.pow(0, 0) == 1);
  CHECK(fs.pow(0, 5) == 0);
  for (Bits x = 1; x < 16; ++x) {
    CHECK(fs.pow(x, fs.q() - 1) == 1);
    CHECK(fs.pow(x, (1ull << 63)) == fs.pow(x, (1ull << 63) % (fs.q() - 1)));
  }
}

TEST_CASE("extension multiplication examples") {
  FieldSpec fs = FieldSpec::make(3);
  ExtElem i = fs.ext(0, 1);
  CHECK(fs.ext_mul(i, i) == fs.ext(fs.k(), 1));  // i^2 = k + i
  ExtElem x = fs.ext(5, 3);
  CHECK(fs.ext_mul(x, kExtOne) == x);
  // m=3, k=1: (1+i)^2 = (1+k) + i = i
  CHECK(fs.ext_mul(fs.ext(1, 1), fs.ext(1, 1)) == fs.ext(0, 1));
}

TEST_CASE("frobenius examples and involution") {
  FieldSpec fs = FieldSpec::make(3);
  CHECK(fs.frobenius(fs.ext(0, 1)) == fs.ext(1, 1));  // i^q = i + 1
  CHECK(fs.frobenius(fs.ext(5, 0)) == fs.ext(5, 0));
  FieldSpec f4 = FieldSpec::make(4);
  SplitMix rng(1);
  for (int t = 0; t < 100; ++t) {
    ExtElem x = f4.element_at(rng.below(f4.q2()));
    CHECK(f4.frobenius(f4.frobenius(x)) == x);
  }
}

TEST_CASE("frobenius is a ring homomorphism") {
  FieldSpec fs = FieldSpec::make(5);
  SplitMix rng(2);
  for (int t = 0; t < 200; ++t) {
    ExtElem x = fs.element_at(rng.below(fs.q2()));
    ExtElem y = fs.element_at(rng.below(fs.q2()));
    CHECK(fs.frobenius(fs.ext_mul(x, y)) ==
          fs.ext_mul(fs.frobenius(x), fs.frobenius(y)));
    CHECK(fs.frobenius(fs.ext_add(x, y)) ==
          fs.ext_add(fs.frobenius(x), fs.frobenius(y)));
  }
}

TEST_CASE("norm examples, multiplicativity, and x * x^q") {
  FieldSpec fs = FieldSpec::make(3);
  CHECK(fs.norm(fs.ext(0, 1)) == fs.k());
  CHECK(fs.norm(kExtOne) == 1);
  for (std::uint64_t ix = 0; ix < fs.q2(); ++ix) {
    ExtElem x = fs.element_at(ix);
    CHECK(fs.ext(fs.norm(x)) == fs.ext_mul(x, fs.frobenius(x)));
    for (std::uint64_t iy = 0; iy < fs.q2(); ++iy) {
      ExtElem y = fs.element_at(iy);
      CHECK(fs.mul(fs.norm(x), fs.norm(y)) == fs.norm(fs.ext_mul(x, y)));
    }
  }
}

TEST_CASE("field axioms on random triples, m = 2..8") {
  for (int m = 2; m <= 8; ++m) {
    FieldSpec fs = FieldSpec::make(m);
    SplitMix rng(100 + static_cast<std::uint64_t>(m));
    for (int t = 0; t < 1000; ++t) {
      Bits a = static_cast<Bits>(rng.below(fs.q()));
      Bits b = static_cast<Bits>(rng.below(fs.q()));
      Bits c = static_cast<Bits>(rng.below(fs.q()));
      CHECK(fs.mul(a, fs.mul(b, c)) == fs.mul(fs.mul(a, b), c));
      CHECK(fs.mul(a, static_cast<Bits>(b ^ c)) ==
            (fs.mul(a, b) ^ fs.mul(a, c)));
      if (a != 0) CHECK(fs.mul(a, fs.inv(a)) == 1);
      ExtElem x = fs.element_at(rng.below(fs.q2()));
      ExtElem y = fs.element_at(rng.below(fs.q2()));
      ExtElem z = fs.element_at(rng.below(fs.q2()));
      CHECK(fs.ext_mul(x, fs.ext_mul(y, z)) == fs.ext_mul(fs.ext_mul(x, y), z));
      CHECK(fs.ext_mul(x, fs.ext_add(y, z)) ==
            fs.ext_add(fs.ext_mul(x, y), fs.ext_mul(x, z)));
      if (x != kExtZero) CHECK(fs.ext_mul(x, fs.ext_inv(x)) == kExtOne);
    }
  }
}

TEST_CASE("mu membership and size") {
  FieldSpec fs = FieldSpec::make(3);
  CHECK(fs.in_mu(kExtOne));
  CHECK_FALSE(fs.in_mu(kExtZero));
  int count = 0;
  for (std::uint64_t ix = 0; ix < fs.q2(); ++ix)
    if (fs.in_mu(fs.element_at(ix))) ++count;
  CHECK(count == 9);
}

TEST_CASE("mu generator has order exactly q+1") {
  for (int m : {2, 3, 4}) {
    FieldSpec fs = FieldSpec::make(m);
    ExtElem g = fs.mu_generator();
    ExtElem x = kExtOne;
    std::set<ExtElem> powers;
    std::uint32_t order = 0;
    for (std::uint32_t j = 1; j <= fs.q() + 1; ++j) {
      x = fs.ext_mul(x, g);
      powers.insert(x);
      if (x == kExtOne) {
        order = j;
        break;
      }
    }
    CHECK(order == fs.q() + 1);
    CHECK(fs.ext_pow(g, fs.q() + 1) == kExtOne);
    if (m == 3) {
      std::set<ExtElem> mu;
      for (std::uint64_t ix = 0; ix < fs.q2(); ++ix)
        if (fs.in_mu(fs.element_at(ix))) mu.insert(fs.element_at(ix));
      CHECK(powers == mu);
    }
  }
}

TEST_CASE("cube testing in mu") {
  FieldSpec f3 = FieldSpec::make(3);
  CHECK(f3.is_cube_in_mu(kExtOne));
  CHECK_FALSE(f3.is_cube_in_mu(f3.mu_generator()));  // order 9, (q+1)/3 = 3
  CHECK_THROWS_AS(f3.is_cube_in_mu(kExtZero), NotInMu);
  FieldSpec f4 = FieldSpec::make(4);
  ExtElem x = kExtOne;
  for (std::uint32_t j = 0; j <= f4.q(); ++j) {
    CHECK(f4.is_cube_in_mu(x));  // gcd(3, 17) = 1
    x = f4.ext_mul(x, f4.mu_generator());
  }
}

TEST_CASE("cube roots in mu") {
  FieldSpec fs = FieldSpec::make(3);
  auto roots1 = fs.cube_roots_in_mu(kExtOne);
  CHECK(roots1.size() == 3);
  for (ExtElem r : roots1) {
    CHECK(fs.ext_mul(fs.ext_mul(r, r), r) == kExtOne);
    CHECK(fs.in_mu(r));
  }
  ExtElem g = fs.mu_generator();
  CHECK_FALSE(fs.is_cube_in_mu(g));
  CHECK(fs.cube_roots_in_mu(g).empty());
  CHECK_THROWS_AS(fs.cube_roots_in_mu(fs.ext(3, 1)), NotInMu);

  // even m: three roots in GF(q^2), exactly one inside mu
  FieldSpec f4 = FieldSpec::make(4);
  ExtElem a = f4.ext_pow(f4.mu_generator(), 5);
  auto roots = f4.cube_roots_in_mu(a);
  CHECK(roots.size() == 3);
  int inside = 0;
  for (ExtElem r : roots) {
    CHECK(f4.ext_mul(f4.ext_mul(r, r), r) == a);
    if (f4.in_mu(r)) ++inside;
  }
  CHECK(inside == 1);
}

TEST_CASE("cubic trinomial roots") {
  // c = 0: x^3 + x = x(x+1)^2, roots {0, 1} in every GF(2^m)
  for (int m : {3, 4}) {
    FieldSpec fs = FieldSpec::make(m);
    auto r = fs.solve_cubic_trinomial(0);
    CHECK(r == std::vector<Bits>{0, 1});
  }
  // m=1: x^3 + x + 1 has no roots in GF(2)
  FieldSpec f1 = FieldSpec::make(1);
  CHECK(f1.solve_cubic_trinomial(1).empty());
  // m=3: counts over nonzero c lie in {0,1,3}; totals over all c equal q
  FieldSpec f3 = FieldSpec::make(3);
  std::size_t total = 0;
  for (Bits c = 0; c < 8; ++c) {
    auto roots = f3.solve_cubic_trinomial(c);
    total += roots.size();
    if (c != 0) CHECK((roots.size() == 0 || roots.size() == 1 || roots.size() == 3));
  }
  CHECK(total == 8);
}

TEST_CASE("cubic trichotomy exhaustive at m in {3,5}") {
  for (int m : {3, 5}) {
    FieldSpec fs = FieldSpec::make(m);
    for (Bits c = 1; c < fs.q(); ++c) {
      auto n = fs.solve_cubic_trinomial(c).size();
      CHECK((n == 0 || n == 1 || n == 3));
    }
  }
}

TEST_CASE("squaring invariance of root counts") {
  for (int m : {3, 4, 5}) {
    FieldSpec fs = FieldSpec::make(m);
    for (Bits c = 0; c < fs.q(); ++c) {
      auto a = fs.solve_cubic_trinomial(c);
      auto b = fs.solve_cubic_trinomial(fs.mul(c, c));
      CHECK(a.size() == b.size());
      // roots of the squared constant are squares of the original roots
      std::vector<Bits> squared;
      for (Bits r : a) squared.push_back(fs.mul(r, r));
      std::sort(squared.begin(), squared.end());
      CHECK(squared == b);
    }
  }
}

TEST_CASE("artin-schreier solver") {
  for (int m : {3, 4}) {
    FieldSpec fs = FieldSpec::make(m);
    SplitMix rng(7);
    for (int t = 0; t < 100; ++t) {
      ExtElem d = fs.element_at(rng.below(fs.q2()));
      auto roots = fs.artin_schreier_roots(d);
      if (fs.ext_trace(d) == 0) {
        REQUIRE(roots.size() == 2);
        for (ExtElem w : roots)
          CHECK(fs.ext_add(fs.ext_mul(w, w), w) == d);
      } else {
        CHECK(roots.empty());
      }
    }
  }
}

TEST_CASE("element encodings") {
  FieldSpec fs = FieldSpec::make(3);
  CHECK(FieldSpec::to_hex(0x5) == "0x5");
  CHECK(fs.to_string(fs.ext(0xA & 7, 1)) == "0x2+0x1*i");
  CHECK(fs.parse_ext("0x3+0x1*i") == fs.ext(3, 1));
  CHECK(fs.parse_ext("0x7") == fs.ext(7, 0));
  CHECK_THROWS_AS(fs.parse_ext("zz"), ParseError);
  CHECK_THROWS_AS(fs.parse_ext("0x9+0x1*i"), ParseError);  // out of range
  CHECK(FieldSpec::parse_base("0xB") == 0xB);
}

TEST_CASE("index packing round-trips") {
  FieldSpec fs = FieldSpec::make(4);
  for (std::uint64_t i = 0; i < fs.q2(); ++i)
    CHECK(fs.index_of(fs.element_at(i)) == i);
}

TEST_CASE("modulus override file") {
  std::string path = "/tmp/quadperm_test_modulus.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "m=3 modulus=0xD k=0x7\n";
    out << "m=4 modulus=0x19 k=0x2\n";
  }
  setenv(kModulusFileEnv, path.c_str(), 1);
  FieldSpec fs = FieldSpec::make(3);
  CHECK(fs.modulus() == 0xD);
  CHECK(fs.k() == 0x7);
  CHECK(fs.trace(fs.k()) == 1);
  // degrees not listed fall back to the defaults
  CHECK(FieldSpec::make(5).modulus() == 0x25);
  unsetenv(kModulusFileEnv);
  CHECK(FieldSpec::make(3).modulus() == 0xB);
}
