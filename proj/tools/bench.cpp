// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference path (FOCKPORT_THREADS=1) against the
// threaded path for the three heavy kernels and checks that both produce
// bit-identical results. Usage: bench [threads], default: hardware count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fockport/channel.hpp"
#include "fockport/exec.hpp"
#include "fockport/metrics.hpp"
#include "fockport/qubit.hpp"
#include "fockport/tomography.hpp"

using namespace fockport;

namespace {

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void set_threads(int n) {
  setenv("FOCKPORT_THREADS", std::to_string(n).c_str(), 1);
}

void row(const char* name, double serial_s, double par_s, bool identical) {
  std::printf("%-28s %10.3f s %10.3f s %8.2fx   %s\n", name, serial_s, par_s,
              par_s > 0 ? serial_s / par_s : 0.0,
              identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : exec::thread_count();
  if (threads < 1) threads = 1;
  std::printf("serial reference vs %d thread(s)\n", threads);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "threaded",
              "speedup");

  bool all_ok = true;

  {
    FockSpace space(2, 10);
    DualRailQubit q(cplx(M_SQRT1_2, 0.0), cplx(0.0, -M_SQRT1_2));
    DensityMatrix in = encode_qubit(q, space).to_density();
    TeleportParams p{0.8, 0.71, 0.0};
    DensityMatrix a = in, b = in;
    set_threads(1);
    double ts = timed([&] { a = transfer_operator_channel(in, p); });
    set_threads(threads);
    double tp = timed([&] { b = transfer_operator_channel(in, p); });
    bool same = (a.rho - b.rho).cwiseAbs().maxCoeff() == 0.0;
    all_ok = all_ok && same;
    row("transfer integral (N=10)", ts, tp, same);
  }

  {
    DualRailQubit q;
    ClassicalStrategy s{0.0, (1.0 - 0.693) / (3.0 - 0.693)};
    set_threads(1);
    MCResult a{DensityMatrix(FockSpace(2, 2),
                             Matrix::Zero(9, 9), true),
               0.0, 0.0};
    double ts = timed(
        [&] { a = simulate_classical_teleporter(0.693, s, q, 2000000, 11); });
    set_threads(threads);
    MCResult b = a;
    double tp = timed(
        [&] { b = simulate_classical_teleporter(0.693, s, q, 2000000, 11); });
    bool same = a.fidelity == b.fidelity && a.std_error == b.std_error &&
                (a.state.rho - b.state.rho).cwiseAbs().maxCoeff() == 0.0;
    all_ok = all_ok && same;
    row("classical MC (2e6 trials)", ts, tp, same);
  }

  {
    FockSpace one(1, 5);
    Matrix vac = Matrix::Zero(one.dim(), one.dim());
    vac(0, 0) = 1.0;
    DensityMatrix rho(one, vac);
    TomographySettings set;
    set.samples_per_phase = 20000;
    set.seed = 13;
    std::vector<QuadratureSample> a, b;
    set_threads(1);
    double ts = timed([&] { a = sample_homodyne(rho, set); });
    set_threads(threads);
    double tp = timed([&] { b = sample_homodyne(rho, set); });
    bool same = a.size() == b.size();
    for (size_t i = 0; same && i < a.size(); ++i)
      same = a[i].phase == b[i].phase && a[i].value == b[i].value;
    all_ok = all_ok && same;
    row("homodyne sampling (240k)", ts, tp, same);
  }

  unsetenv("FOCKPORT_THREADS");
  if (!all_ok) {
    std::fprintf(stderr, "threaded results diverged from the reference\n");
    return 1;
  }
  return 0;
}
