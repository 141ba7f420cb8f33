#include <benchmark/benchmark.h>

#include "dcm/gen.hpp"
#include "dcm/gps.hpp"
#include "dcm/lottery.hpp"
#include "dcm/opt.hpp"
#include "dcm/sdm.hpp"
#include "fixtures.hpp"

namespace {

dcm::Instance sized_instance(int n_students) {
  dcm::GenParams p;
  p.seed = 99;
  p.n_students = n_students;
  p.n_schools = 3;
  p.n_types = 4;
  p.style = dcm::ConstraintStyle::RandomSubsets;
  return dcm::gen_instance(p);
}

void BM_ComputeOpt(benchmark::State& state) {
  const dcm::Instance inst = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dcm::compute_opt(inst));
}
BENCHMARK(BM_ComputeOpt)->Arg(4)->Arg(8)->Arg(16);

void BM_SerialDictatorship(benchmark::State& state) {
  const dcm::Instance inst = sized_instance(static_cast<int>(state.range(0)));
  std::vector<int> order(inst.num_students());
  for (int i = 0; i < inst.num_students(); ++i) order[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(dcm::run_sdm(inst, order));
}
BENCHMARK(BM_SerialDictatorship)->Arg(4)->Arg(8)->Arg(16);

void BM_Eating(benchmark::State& state) {
  const dcm::Instance inst = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dcm::run_gps(inst));
}
BENCHMARK(BM_Eating)->Arg(4)->Arg(8);

void BM_LotteryDecompose(benchmark::State& state) {
  const dcm::Instance inst = sized_instance(static_cast<int>(state.range(0)));
  const dcm::GpsResult r = dcm::run_gps(inst);
  for (auto _ : state) benchmark::DoNotOptimize(dcm::decompose(r.x, inst, r.opt));
}
BENCHMARK(BM_LotteryDecompose)->Arg(4)->Arg(8);

void BM_SevenStudentWalkthrough(benchmark::State& state) {
  const dcm::Instance inst = fixtures::seven_students();
  const std::vector<int> order{0, 1, 2, 3, 4, 5, 6};
  for (auto _ : state) benchmark::DoNotOptimize(dcm::run_sdm(inst, order));
}
BENCHMARK(BM_SevenStudentWalkthrough);

}  // namespace

BENCHMARK_MAIN();
