#include <benchmark/benchmark.h>

#include <string>

#include "proofdeck/codec.hpp"
#include "proofdeck/lexer.hpp"
#include "proofdeck/pkg.hpp"
#include "proofdeck/stm.hpp"

namespace {

std::string script(int lemmas) {
  std::string s;
  for (int i = 0; i < lemmas; ++i)
    s += "(* lemma " + std::to_string(i) + " *)\nLemma t" + std::to_string(i) +
         " : A /\\ B -> B /\\ A.\nProof. intro h. destruct h. split. assumption. assumption. Qed.\n";
  return s;
}

void BM_Split(benchmark::State& state) {
  const std::string src = script(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(proofdeck::split(src));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_Split)->Arg(100)->Arg(10000);

void BM_AddObserve(benchmark::State& state) {
  const auto sentences = proofdeck::split(script(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    proofdeck::pkg::Manager m;
    proofdeck::Stm stm(m, {});
    stm.init({}, {});
    proofdeck::StateId at = proofdeck::kInitialState;
    for (const auto& s : sentences) {
      at = stm.add(at, 0, s.text);
      stm.observe(at);
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * sentences.size()));
}
BENCHMARK(BM_AddObserve)->Arg(100);

void BM_CodecRoundTrip(benchmark::State& state) {
  const proofdeck::Answer a = proofdeck::ans::GoalInfo{proofdeck::StateId{42}, "H : A\n============\nB /\\ A", 1};
  for (auto _ : state) benchmark::DoNotOptimize(proofdeck::decode_answer(proofdeck::encode(a)));
}
BENCHMARK(BM_CodecRoundTrip);

}  // namespace
BENCHMARK_MAIN();
