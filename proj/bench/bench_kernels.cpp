// Copyright 2026 The catq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Times each kernel in its serial and OpenMP form on the same inputs and
// prints one CSV row per kernel. Usage: catq_bench [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "catq/kernels.hpp"
#include "catq/random.hpp"

namespace {

using catq::ComplexMatrix;
namespace ks = catq::kernels::serial;
namespace ko = catq::kernels::omp;

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, const std::string& size, int repeats,
            const std::function<void()>& serial, const std::function<void()>& parallel) {
  const double s = best_of(repeats, serial);
  const double p = best_of(repeats, parallel);
  std::cout << name << ',' << size << ',' << std::setprecision(4) << s << ',' << p << ',' << s / p << '\n';
}

ComplexMatrix random_matrix(std::size_t d, catq::Rng& rng) {
  return catq::haar_unitary(d, rng).matrix();
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  catq::Rng rng = catq::stream(7, 0);
  std::cout << "# threads: " << omp_get_max_threads() << "\n";
  std::cout << "kernel,size,serial_ms,omp_ms,speedup\n";

  {
    const ComplexMatrix a = random_matrix(24, rng), b = random_matrix(24, rng);
    ComplexMatrix out;
    report("kron", "24x24", repeats, [&] { ks::kron(a, b, out); }, [&] { ko::kron(a, b, out); });
  }
  {
    const std::vector<std::size_t> dims{16, 16, 4};
    const std::vector<std::size_t> keep{0, 2};
    const auto index = catq::kernels::make_trace_index(dims, keep);
    const ComplexMatrix op = random_matrix(1024, rng);
    ComplexMatrix out;
    report("partial_trace", "16x16x4", repeats, [&] { ks::partial_trace(op, index, out); },
           [&] { ko::partial_trace(op, index, out); });
  }
  {
    std::vector<ComplexMatrix> left, right;
    for (int i = 0; i < 32; ++i) {
      left.push_back(random_matrix(32, rng));
      right.push_back(random_matrix(32, rng));
    }
    ComplexMatrix gram;
    report("block_gram", "32 blocks of 32", repeats, [&] { ks::block_gram(left, right, gram); },
           [&] { ko::block_gram(left, right, gram); });
  }
  {
    std::vector<ComplexMatrix> ops;
    for (int i = 0; i < 64; ++i) ops.push_back(random_matrix(48, rng));
    const std::vector<double> weights(ops.size(), 1.0 / static_cast<double>(ops.size()));
    const ComplexMatrix sigma = catq::random_density_matrix(48, rng).matrix();
    ComplexMatrix out;
    report("weighted_conjugation", "64 ops of 48", repeats,
           [&] { ks::weighted_conjugation(ops, weights, sigma, out); },
           [&] { ko::weighted_conjugation(ops, weights, sigma, out); });
  }
  {
    const std::size_t d = 101;
    const ComplexMatrix rho = catq::random_density_matrix(d, rng).matrix();
    std::vector<double> w(d * d);
    report("wigner_forward", "d=101", repeats, [&] { ks::wigner_forward(rho, w); },
           [&] { ko::wigner_forward(rho, w); });
    ComplexMatrix back;
    report("wigner_inverse", "d=101", repeats, [&] { ks::wigner_inverse(w, d, back); },
           [&] { ko::wigner_inverse(w, d, back); });
  }
  {
    const std::size_t n = 2048, columns = 256;
    catq::kernels::PermutationTable perms(8, std::vector<std::size_t>(n));
    for (std::size_t j = 0; j < perms.size(); ++j)
      for (std::size_t x = 0; x < n; ++x) perms[j][x] = (x * (2 * j + 1) + j) % n;
    std::vector<double> in(n * columns), out(n * columns);
    std::iota(in.begin(), in.end(), 0.0);
    report("pullback_average", "8 perms 2048x256", repeats,
           [&] { ks::pullback_average(in, n, perms, out); },
           [&] { ko::pullback_average(in, n, perms, out); });
  }
  return 0;
}
