#include <doctest.h>

#include "ploc/axioms.hpp"
#include "ploc/kernels.hpp"
#include "ploc/locality.hpp"

using namespace ploc;
using namespace ploc::kernels;

// The OpenMP kernels must agree with the serial references bit for bit.

TEST_CASE("first_index: parallel equals serial") {
  auto pred = [](long i) { return i % 7 == 3 && i > 1000; };
  for (long n : {0L, 1L, 100L, 100000L}) {
    CHECK(first_index_serial(n, pred) == first_index_omp(n, pred));
  }
  auto never = [](long) { return false; };
  CHECK(first_index_serial(100000, never) == -1);
  CHECK(first_index_omp(100000, never) == -1);
}

TEST_CASE("filter_indices: parallel equals serial") {
  auto pred = [](long i) { return (i * 2654435761u) % 17 == 0; };
  for (long n : {0L, 1L, 1000L, 300000L}) {
    CHECK(filter_indices_serial(n, pred) == filter_indices_omp(n, pred));
  }
}

TEST_CASE("count_matching: parallel equals serial") {
  auto pred = [](long i) { return (i * i) % 31 < 7; };
  for (long n : {0L, 10L, 250000L}) {
    CHECK(count_matching_serial(n, pred) == count_matching_omp(n, pred));
  }
}

TEST_CASE("axiom sweeps: parallel and serial reports agree") {
  for (auto m : {make_symmetric(4), make_dihedral8()}) {
    auto serial = check_axioms(m, 3, Mode::Serial);
    auto parallel = check_axioms(m, 3, Mode::Parallel);
    REQUIRE(serial.laws.size() == parallel.laws.size());
    for (std::size_t i = 0; i < serial.laws.size(); ++i) {
      CHECK(serial.laws[i].pass == parallel.laws[i].pass);
      CHECK(serial.laws[i].witness == parallel.laws[i].witness);
      CHECK(serial.laws[i].checked == parallel.laws[i].checked);
    }
  }
}

TEST_CASE("word enumeration agrees across modes on a restricted-domain carrier") {
  Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::Centric);
  // the cache is built in parallel mode by default; rebuild serially by hand
  const PartialGroup& m = loc.pg;
  for (int len = 2; len <= 3; ++len) {
    const auto& cached = m.words(len);
    const auto& prev = m.words(len - 1);
    std::vector<Word> serial;
    for (const Word& p : prev)
      for (Element x = 0; x < m.size(); ++x) {
        Word w(p);
        w.push_back(x);
        if (m.accepts(w)) serial.push_back(w);
      }
    CHECK(serial == cached);
  }
}
