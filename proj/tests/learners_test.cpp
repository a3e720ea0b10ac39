//
// Copyright 2026 The CDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

#include "cdp/errors.hpp"
#include "cdp/hypothesis.hpp"
#include "cdp/ldim.hpp"
#include "cdp/learners.hpp"
#include "cdp/random_source.hpp"
#include "test_support.hpp"

using cdp::AgnosticExpertLearner;
using cdp::HalvingLearner;
using cdp::HypothesisClass;
using cdp::LabeledExample;
using cdp::LdimCache;
using cdp::RandomSource;
using cdp::RestartingSoaLearner;
using cdp::RowSet;
using cdp::SoaLearner;
using cdp::StreamStyle;

namespace {

std::shared_ptr<const HypothesisClass> shared(HypothesisClass cls) {
  return std::make_shared<const HypothesisClass>(std::move(cls));
}

}  // namespace

TEST_CASE("HypothesisClass validates its table") {
  using Table = std::vector<std::vector<std::uint8_t>>;
  CHECK_THROWS_AS(HypothesisClass(2, Table{}), cdp::ParameterError);
  CHECK_THROWS_AS(HypothesisClass(2, Table{{0, 1}, {0, 1}}),
                  cdp::ParameterError);  // duplicate rows
  CHECK_THROWS_AS(HypothesisClass(2, Table{{0, 1, 1}}), cdp::ParameterError);
  CHECK_THROWS_AS(HypothesisClass(2, Table{{0, 2}}), cdp::ParameterError);
}

TEST_CASE("class file format round-trips") {
  const HypothesisClass cls = HypothesisClass::thresholds(5);
  std::stringstream buf;
  cls.save(buf);
  const HypothesisClass back = HypothesisClass::load(buf);
  CHECK(back.domain_size() == cls.domain_size());
  CHECK(back.size() == cls.size());
  for (std::int32_t r = 0; r < cls.size(); ++r) {
    for (std::int32_t x = 0; x < cls.domain_size(); ++x) {
      CHECK(back.label(r, x) == cls.label(r, x));
    }
  }
  std::stringstream bad("n=2 h=1\n01x\n");
  CHECK_THROWS_AS(HypothesisClass::load(bad), cdp::ParameterError);
}

TEST_CASE("ldim: singleton class has dimension 0") {
  const HypothesisClass cls(3, {{0, 1, 0}});
  CHECK(cdp::ldim(cls) == 0);
}

TEST_CASE("ldim: full class over n points has dimension n (brute-forced)") {
  for (std::int32_t n : {1, 2, 3}) {
    const HypothesisClass cls = HypothesisClass::full(n);
    CHECK(cdp::ldim(cls) == n);
    CHECK(cdp_test::brute_ldim(cls) == n);
  }
}

TEST_CASE("ldim: point functions plus all-zeros has dimension 1") {
  const HypothesisClass cls = HypothesisClass::point_functions(5);
  CHECK(cdp::ldim(cls) == 1);
  CHECK(cdp_test::brute_ldim(cls) == 1);
}

TEST_CASE("ldim matches the brute-force recursion on a zoo of classes") {
  std::vector<HypothesisClass> zoo;
  zoo.push_back(HypothesisClass::thresholds(7));
  zoo.push_back(HypothesisClass::point_functions(4));
  zoo.push_back(HypothesisClass::full(3));
  RandomSource rng(5150);
  // A few random classes as well.
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<std::uint8_t>> table;
    std::set<std::vector<std::uint8_t>> seen;
    const std::int32_t n = 4;
    while (table.size() < 6) {
      std::vector<std::uint8_t> row(n);
      for (auto& v : row) v = static_cast<std::uint8_t>(rng.uniform_int(2));
      if (seen.insert(row).second) table.push_back(row);
    }
    zoo.emplace_back(n, std::move(table));
  }
  for (const auto& cls : zoo) {
    CHECK(cdp::ldim(cls) == cdp_test::brute_ldim(cls));
  }
}

TEST_CASE("ldim consistency: <= floor(log2 |H|), and = n on full classes") {
  for (std::int32_t n = 1; n <= 12; ++n) {
    const HypothesisClass thr = HypothesisClass::thresholds(n);
    const int d = cdp::ldim(thr);
    CHECK(d <= static_cast<int>(std::floor(std::log2(thr.size()))));
  }
  for (std::int32_t n = 1; n <= 12; ++n) {
    CHECK(cdp::ldim(HypothesisClass::full(n)) == n);
  }
}

TEST_CASE("ldim rejects the empty set") {
  auto cls = shared(HypothesisClass::thresholds(3));
  LdimCache cache(cls);
  CHECK_THROWS_AS(cache.ldim(RowSet{}), cdp::ParameterError);
}

TEST_CASE("thresholds over 64 points have dimension 6") {
  CHECK(cdp::ldim(HypothesisClass::thresholds(64)) == 6);
}

TEST_CASE("SOA with a singleton version space echoes that hypothesis") {
  auto cls = shared(HypothesisClass(3, {{0, 1, 0}}));
  SoaLearner soa(cls);
  for (int rep = 0; rep < 3; ++rep) {
    CHECK(soa.predict(0) == 0);
    CHECK(soa.predict(1) == 1);
    CHECK(soa.predict(2) == 0);
  }
}

TEST_CASE("SOA mistake bound: full class n=4, any realizable length-64 run") {
  auto cls = shared(HypothesisClass::full(4));
  RandomSource rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int32_t h =
        static_cast<std::int32_t>(rng.uniform_int(cls->size()));
    auto stream =
        cdp::make_realizable_stream(cls, h, 64, StreamStyle::kUniform, rng);
    SoaLearner soa(cls);
    CHECK(cdp_test::replay_mistakes(soa, stream) <= 4);
  }
}

TEST_CASE("SOA on thresholds(64): forced binary-search stream costs <= 6") {
  auto cls = shared(HypothesisClass::thresholds(64));
  RandomSource rng(21);
  for (std::int32_t h : {0, 13, 32, 64}) {
    SoaLearner probe(cls);  // force against the same algorithm under test
    auto stream = cdp::make_realizable_stream(
        cls, h, 128, StreamStyle::kMistakeForcing, rng, &probe);
    SoaLearner fresh(cls);
    CHECK(cdp_test::replay_mistakes(fresh, stream) <= 6);
  }
}

TEST_CASE("SOA mistake bound across the class zoo on random streams") {
  RandomSource rng(31);
  std::vector<std::shared_ptr<const HypothesisClass>> zoo = {
      shared(HypothesisClass::full(3)),
      shared(HypothesisClass::thresholds(15)),
      shared(HypothesisClass::point_functions(6)),
  };
  for (const auto& cls : zoo) {
    auto cache = std::make_shared<LdimCache>(cls);
    const int d = cache->ldim_full();
    for (int trial = 0; trial < 1000; ++trial) {
      const std::int32_t h =
          static_cast<std::int32_t>(rng.uniform_int(cls->size()));
      auto stream =
          cdp::make_realizable_stream(cls, h, 32, StreamStyle::kUniform, rng);
      SoaLearner soa(cls, cache);
      CHECK(cdp_test::replay_mistakes(soa, stream) <= d);
    }
  }
}

TEST_CASE("SOA: non-realizable update is a contract violation") {
  auto cls = shared(HypothesisClass::thresholds(4));  // monotone rows
  SoaLearner soa(cls);
  soa.update(1, 1);
  CHECK_THROWS_AS(soa.update(3, 0), cdp::ContractViolation);
}

TEST_CASE("predict purity: repeated predicts return identical labels") {
  auto cls = shared(HypothesisClass::thresholds(9));
  SoaLearner soa(cls);
  HalvingLearner halving(cls);
  for (std::int32_t x = 0; x < 9; ++x) {
    const int ps = soa.predict(x);
    const int ph = halving.predict(x);
    for (int rep = 0; rep < 100; ++rep) {
      CHECK(soa.predict(x) == ps);
      CHECK(halving.predict(x) == ph);
    }
  }
}

TEST_CASE("Halving: singleton class never errs on its own labels") {
  auto cls = shared(HypothesisClass(4, {{1, 0, 1, 0}}));
  HalvingLearner h(cls);
  RandomSource rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::int32_t x = static_cast<std::int32_t>(rng.uniform_int(4));
    CHECK(h.predict(x) == cls->label(0, x));
    h.update(x, cls->label(0, x));
  }
}

TEST_CASE("Halving: at most log2 |H| mistakes under forcing; halving law") {
  auto cls = shared(HypothesisClass::full(4));  // |H| = 16
  RandomSource rng(77);
  HalvingLearner probe(cls);
  auto stream = cdp::make_realizable_stream(
      cls, /*h_index=*/0, 64, StreamStyle::kMistakeForcing, rng, &probe);
  HalvingLearner fresh(cls);
  std::int64_t mistakes = 0;
  for (const auto& e : stream) {
    const std::size_t before = fresh.version_space().size();
    const bool miss = fresh.predict(e.x) != e.y;
    fresh.update(e.x, e.y);
    if (miss) {
      ++mistakes;
      CHECK(fresh.version_space().size() * 2 <= before);
    }
  }
  CHECK(mistakes <= 4);
}

TEST_CASE("mistake-forcing equals the exhaustive adversary on full(4)") {
  auto cls = shared(HypothesisClass::full(4));
  const std::int32_t h = 0;  // all-zeros row
  const std::int64_t oracle = cdp_test::exhaustive_max_mistakes(
      cls, h, [&] { return std::make_unique<HalvingLearner>(cls); },
      /*depth=*/6);
  CHECK(oracle == 4);
  RandomSource rng(123);
  HalvingLearner probe(cls);
  auto stream = cdp::make_realizable_stream(
      cls, h, 6, StreamStyle::kMistakeForcing, rng, &probe);
  HalvingLearner fresh(cls);
  CHECK(cdp_test::replay_mistakes(fresh, stream) == 4);
}

TEST_CASE("mistake-forcing achieves ldim equality for SOA on full classes") {
  for (std::int32_t n : {3, 4}) {
    auto cls = shared(HypothesisClass::full(n));
    RandomSource rng(n);
    SoaLearner probe(cls);
    auto stream = cdp::make_realizable_stream(
        cls, /*h_index=*/0, 4 * n, StreamStyle::kMistakeForcing, rng, &probe);
    SoaLearner fresh(cls);
    CHECK(cdp_test::replay_mistakes(fresh, stream) == n);
  }
}

TEST_CASE("make_realizable_stream basics") {
  auto cls = shared(HypothesisClass::thresholds(6));
  RandomSource rng(9);
  CHECK(cdp::make_realizable_stream(cls, 2, 0, StreamStyle::kUniform, rng)
            .empty());
  for (auto style : {StreamStyle::kUniform, StreamStyle::kRoundRobin,
                     StreamStyle::kMistakeForcing}) {
    auto stream = cdp::make_realizable_stream(cls, 3, 50, style, rng);
    for (const auto& e : stream) {
      CHECK(e.y == cls->label(3, e.x));  // consistent with h by table lookup
    }
  }
  auto rr = cdp::make_realizable_stream(cls, 1, 12, StreamStyle::kRoundRobin,
                                        rng);
  for (std::size_t t = 0; t < rr.size(); ++t) {
    CHECK(rr[t].x == static_cast<std::int32_t>(t % 6));
  }
  CHECK_THROWS_AS(
      cdp::make_realizable_stream(cls, 99, 5, StreamStyle::kUniform, rng),
      cdp::ParameterError);
}

TEST_CASE("snapshot independence under random interleavings") {
  auto cls = shared(HypothesisClass::thresholds(8));
  RandomSource rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    SoaLearner original(cls);
    std::vector<LabeledExample> hist_a, hist_b;
    // Shared prefix.
    const std::int32_t h =
        static_cast<std::int32_t>(rng.uniform_int(cls->size()));
    for (int i = 0; i < 3; ++i) {
      const std::int32_t x = static_cast<std::int32_t>(rng.uniform_int(8));
      const LabeledExample e{x, cls->label(h, x)};
      original.update(e.x, e.y);
      hist_a.push_back(e);
      hist_b.push_back(e);
    }
    auto copy = original.snapshot();
    // Diverging suffixes: each side follows a hypothesis consistent with
    // its own current version space.
    for (int i = 0; i < 4; ++i) {
      const std::int32_t x = static_cast<std::int32_t>(rng.uniform_int(8));
      const LabeledExample ea{x, cls->label(h, x)};
      original.update(ea.x, ea.y);
      hist_a.push_back(ea);

      const std::int32_t x2 = static_cast<std::int32_t>(rng.uniform_int(8));
      const std::uint32_t hb = static_cast<SoaLearner*>(copy.get())
                                   ->version_space()
                                   .front();
      const LabeledExample eb{
          x2, cls->label(static_cast<std::int32_t>(hb), x2)};
      copy->update(eb.x, eb.y);
      hist_b.push_back(eb);
    }
    // Each instance matches a fresh replay of its own history.
    SoaLearner replay_a(cls), replay_b(cls);
    for (const auto& e : hist_a) replay_a.update(e.x, e.y);
    for (const auto& e : hist_b) replay_b.update(e.x, e.y);
    for (std::int32_t x = 0; x < 8; ++x) {
      CHECK(original.predict(x) == replay_a.predict(x));
      CHECK(copy->predict(x) == replay_b.predict(x));
    }
  }
}

TEST_CASE("restarting SOA tolerates contradictory streams") {
  auto cls = shared(HypothesisClass::thresholds(6));
  RestartingSoaLearner learner(cls);
  RandomSource rng(41);
  for (int t = 0; t < 500; ++t) {
    const std::int32_t x = static_cast<std::int32_t>(rng.uniform_int(6));
    const std::int32_t y = static_cast<std::int32_t>(rng.uniform_int(2));
    learner.predict(x);
    learner.update(x, y);  // never throws
  }
  CHECK(learner.restarts() > 0);
}

TEST_CASE("agnostic learner: realizable loss stays near d ln T") {
  auto cls = shared(HypothesisClass::thresholds(64));
  auto cache = std::make_shared<LdimCache>(cls);
  const int d = cache->ldim_full();
  const std::int64_t horizon = 2000;
  RandomSource rng(99);
  const double bound = 3.0 * d * std::log(static_cast<double>(horizon));
  for (int trial = 0; trial < 5; ++trial) {
    const std::int32_t h =
        static_cast<std::int32_t>(rng.uniform_int(cls->size()));
    auto stream = cdp::make_realizable_stream(cls, h, horizon,
                                              StreamStyle::kUniform, rng);
    AgnosticExpertLearner learner(cls, cache, /*mistake_budget=*/0.0, horizon);
    CHECK(cdp_test::replay_mistakes(learner, stream) <=
          static_cast<std::int64_t>(bound));
  }
}

TEST_CASE("agnostic learner: m planted flips cost O(m + d ln T)") {
  auto cls = shared(HypothesisClass::thresholds(64));
  auto cache = std::make_shared<LdimCache>(cls);
  const int d = cache->ldim_full();
  const std::int64_t horizon = 2000;
  RandomSource rng(1234);
  for (std::int64_t m : {25, 100}) {
    const std::int32_t h =
        static_cast<std::int32_t>(rng.uniform_int(cls->size()));
    auto stream = cdp::make_realizable_stream(cls, h, horizon,
                                              StreamStyle::kUniform, rng);
    for (std::int64_t i = 0; i < m; ++i) {
      auto& e = stream[rng.uniform_int(stream.size())];
      e.y = 1 - e.y;
    }
    const std::int64_t opt = cdp::disagreements_with(*cls, h, stream);
    AgnosticExpertLearner learner(cls, cache, static_cast<double>(m), horizon);
    const std::int64_t loss = cdp_test::replay_mistakes(learner, stream);
    const double bound =
        4.0 * (static_cast<double>(opt) +
               d * std::log(static_cast<double>(horizon)));
    CHECK(loss <= static_cast<std::int64_t>(bound));
  }
}

TEST_CASE("agnostic learner: constant-label stream with the constant in H") {
  auto cls = shared(HypothesisClass::thresholds(16));  // row 0 is all-ones
  auto cache = std::make_shared<LdimCache>(cls);
  const int d = cache->ldim_full();
  const std::int64_t horizon = 1000;
  AgnosticExpertLearner learner(cls, cache, 0.0, horizon);
  RandomSource rng(5);
  std::int64_t loss = 0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const std::int32_t x = static_cast<std::int32_t>(rng.uniform_int(16));
    loss += learner.predict(x) != 1 ? 1 : 0;
    learner.update(x, 1);
  }
  CHECK(loss <= static_cast<std::int64_t>(
                    3.0 * d * std::log(static_cast<double>(horizon))));
}

TEST_CASE("stream_opt finds the best row") {
  auto cls = shared(HypothesisClass::thresholds(4));
  std::vector<LabeledExample> stream = {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
  CHECK(cdp::stream_opt(*cls, stream) == 0);  // all-ones row fits exactly
  stream.push_back({0, 0});
  CHECK(cdp::stream_opt(*cls, stream) == 1);
}
