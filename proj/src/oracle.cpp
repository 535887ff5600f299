#include "hashsim/oracle.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace hashsim {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

constexpr double kPi = 3.14159265358979323846;

// Qubit layout: pair j owns qubits (2j, 2j+1) = (Alice half, Bob half);
// qubit q is bit q of the computational basis index.

Matrix2cd rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2cd m;
  m << complex<double>(c, 0), complex<double>(0, -s),
       complex<double>(0, -s), complex<double>(c, 0);
  return m;
}

Matrix2cd ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2cd m;
  m << complex<double>(c, 0), complex<double>(-s, 0),
       complex<double>(s, 0), complex<double>(c, 0);
  return m;
}

Matrix2cd rz(double theta) {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::exp(complex<double>(0, -theta / 2));
  m(1, 1) = std::exp(complex<double>(0, theta / 2));
  return m;
}

Matrix2cd rotation(const std::string& axis, double angle_pi) {
  const double theta = angle_pi * kPi;
  if (axis == "rx") return rx(theta);
  if (axis == "ry") return ry(theta);
  if (axis == "rz") return rz(theta);
  throw std::invalid_argument("unknown rotation '" + axis + "'");
}

MatrixXcd embed_single(const Matrix2cd& g, int qubit, int num_qubits) {
  const int dim = 1 << num_qubits;
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int bi = (i >> qubit) & 1;
    for (int bo = 0; bo < 2; ++bo) {
      const int o = (i & ~(1 << qubit)) | (bo << qubit);
      u(o, i) = g(bo, bi);
    }
  }
  return u;
}

MatrixXcd cnot_gate(int control, int target, int num_qubits) {
  const int dim = 1 << num_qubits;
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int o = ((i >> control) & 1) ? i ^ (1 << target) : i;
    u(o, i) = 1.0;
  }
  return u;
}

MatrixXcd cz_gate(int q1, int q2, int num_qubits) {
  const int dim = 1 << num_qubits;
  MatrixXcd u = MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (((i >> q1) & 1) && ((i >> q2) & 1)) u(i, i) = -1.0;
  }
  return u;
}

// Bell vectors of one pair, column index = label code a | (b << 1):
// |B_ab> = (|0>_A |b>_B + (-1)^a |1>_A |1^b>_B) / sqrt(2).
MatrixXcd one_pair_bell_basis() {
  MatrixXcd b = MatrixXcd::Zero(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  for (int label = 0; label < 4; ++label) {
    const int a = label & 1, amp = (label >> 1) & 1;
    b((amp << 1) | 0, label) = r;                    // qA=0, qB=b
    b(((1 - amp) << 1) | 1, label) = (a ? -r : r);   // qA=1, qB=1^b
  }
  return b;
}

// Bell basis of m pairs; column index = packed error string.
MatrixXcd bell_basis(int pairs) {
  MatrixXcd b = one_pair_bell_basis();
  MatrixXcd out = b;
  for (int j = 1; j < pairs; ++j) {
    out = Eigen::kroneckerProduct(b, out).eval();
  }
  return out;
}

struct BellReadout {
  int label = -1;           // argmax diagonal entry
  double top = 0.0;         // its normalized weight
  double max_off_diag = 0.0;
};

BellReadout read_bell_diagonal(const MatrixXcd& rho, int pairs) {
  const MatrixXcd b = bell_basis(pairs);
  const MatrixXcd d = b.adjoint() * rho * b;
  BellReadout r;
  double trace = 0.0;
  for (int i = 0; i < d.rows(); ++i) trace += d(i, i).real();
  // A numerically extinct branch (probability at roundoff level) has no
  // meaningful normalized weights; report it as empty instead of dividing
  // rounding residue by rounding residue.
  if (!(trace > 1e-15)) return r;
  for (int i = 0; i < d.rows(); ++i) {
    const double w = d(i, i).real() / trace;
    if (w > r.top) {
      r.top = w;
      r.label = i;
    }
    for (int j = 0; j < d.cols(); ++j) {
      if (i != j) r.max_off_diag = std::max(r.max_off_diag, std::abs(d(i, j)));
    }
  }
  return r;
}

struct Branch {
  std::vector<int> parities;
  MatrixXcd rho;  // unnormalized; trace = branch probability
};

// Conditional state after measuring pair t in the computational basis and
// keeping outcomes of the given parity. Removes the pair's two qubits,
// compacting higher pairs down by one slot.
MatrixXcd measure_pair(const MatrixXcd& rho, int t, int parity, int pairs) {
  const int nq = 2 * pairs;
  const int out_dim = 1 << (nq - 2);
  const int low_mask = (1 << (2 * t)) - 1;
  auto expand = [&](int idx, int oa, int ob) {
    const int low = idx & low_mask;
    const int high = (idx & ~low_mask) << 2;
    return low | high | (oa << (2 * t)) | (ob << (2 * t + 1));
  };
  MatrixXcd out = MatrixXcd::Zero(out_dim, out_dim);
  for (int oa = 0; oa < 2; ++oa) {
    const int ob = oa ^ parity;
    for (int r = 0; r < out_dim; ++r) {
      const int er = expand(r, oa, ob);
      for (int c = 0; c < out_dim; ++c) {
        out(r, c) += rho(er, expand(c, oa, ob));
      }
    }
  }
  return out;
}

}  // namespace

OracleResult dm_simulate(const BellDiagonalDistribution& input,
                         const std::vector<RoundString>& schedule,
                         Variant variant) {
  if (input.pairs() > 3) {
    throw std::invalid_argument("density-matrix oracle is limited to n <= 3");
  }
  if (static_cast<int>(schedule.size()) >= input.pairs()) {
    throw std::invalid_argument("schedule leaves no surviving pair");
  }

  const int n = input.pairs();
  const MatrixXcd b0 = bell_basis(n);
  MatrixXcd rho = MatrixXcd::Zero(b0.rows(), b0.cols());
  for (std::uint64_t x = 0; x < input.dense_weights().size(); ++x) {
    const double w = input.dense_weights()[x];
    if (w == 0.0) continue;
    rho += w * (b0.col(x) * b0.col(x).adjoint());
  }

  OracleResult result;
  std::vector<Branch> branches;
  branches.push_back({{}, std::move(rho)});

  int live = n;
  for (const RoundString& s : schedule) {
    std::vector<int> ids(live);
    for (int i = 0; i < live; ++i) ids[i] = i;
    const auto items = compile_round(s, variant, 1, ids);
    const int nq = 2 * live;
    const int t = target_pair(s);

    // Everything before the measurement is one unitary; build it once.
    MatrixXcd u = MatrixXcd::Identity(1 << nq, 1 << nq);
    for (const auto& item : items) {
      if (item.gate == "measure_z") continue;
      if (item.gate == "cnot" || item.gate == "cz") {
        const int c = item.pairs[0], tt = item.pairs[1];
        const MatrixXcd ga = item.gate == "cnot"
                                 ? cnot_gate(2 * c, 2 * tt, nq)
                                 : cz_gate(2 * c, 2 * tt, nq);
        const MatrixXcd gb = item.gate == "cnot"
                                 ? cnot_gate(2 * c + 1, 2 * tt + 1, nq)
                                 : cz_gate(2 * c + 1, 2 * tt + 1, nq);
        u = gb * ga * u;
        continue;
      }
      const Matrix2cd g = rotation(item.gate, item.angle_pi);
      if (item.party == Party::kAlice || item.party == Party::kBoth) {
        u = embed_single(g, 2 * item.pairs[0], nq) * u;
      }
      if (item.party == Party::kBob || item.party == Party::kBoth) {
        u = embed_single(g, 2 * item.pairs[0] + 1, nq) * u;
      }
    }

    std::vector<Branch> next;
    next.reserve(branches.size() * 2);
    for (auto& br : branches) {
      const MatrixXcd evolved = u * br.rho * u.adjoint();
      for (int y = 0; y < 2; ++y) {
        Branch nb;
        nb.parities = br.parities;
        nb.parities.push_back(y);
        nb.rho = measure_pair(evolved, t, y, live);
        next.push_back(std::move(nb));
      }
    }
    branches = std::move(next);
    --live;
  }

  for (auto& br : branches) {
    const double prob = std::max(0.0, br.rho.trace().real());
    const BellReadout r = read_bell_diagonal(br.rho, live);
    result.max_off_diagonal = std::max(result.max_off_diagonal, r.max_off_diag);
    result.expected_fidelity += prob * r.top;
    result.branches.push_back({br.parities, prob, r.top});
  }
  return result;
}

namespace {

// Independent transcription of the protocol's step-2 rotation table, so the
// classical label maps are checked against the physics rather than against
// themselves. role_target matters only for the CZ variant.
std::vector<std::pair<Matrix2cd, Matrix2cd>> step2_rotations(
    Variant variant, bool role_target, PauliLabel s) {
  const double q = kPi / 2;
  std::vector<std::pair<Matrix2cd, Matrix2cd>> ab;  // (Alice, Bob)
  if (variant == Variant::kCnot || !role_target) {
    if (s == kPhiMinus) ab.emplace_back(ry(q), ry(q));
    if (s == kPsiMinus) ab.emplace_back(rx(3 * q), rx(q));
  } else {
    if (s == kPsiPlus) ab.emplace_back(ry(q), ry(q));
    if (s == kPsiMinus) ab.emplace_back(rz(3 * q), rz(q));
  }
  return ab;
}

int bell_label_of(const MatrixXcd& rho, int pairs, double* purity_defect) {
  const BellReadout r = read_bell_diagonal(rho, pairs);
  if (purity_defect) {
    *purity_defect = std::max(1.0 - r.top, r.max_off_diag);
  }
  return r.label;
}

MatrixXcd bell_projector(int pairs, std::uint64_t label) {
  const MatrixXcd b = bell_basis(pairs);
  return b.col(label) * b.col(label).adjoint();
}

}  // namespace

bool validate_label_maps(Variant variant, std::string* diagnostics) {
  std::ostringstream diag;
  bool ok = true;
  auto fail = [&](const std::string& what) {
    ok = false;
    diag << what << '\n';
  };

  // Step 2: one pair, every role / symbol / input label.
  for (int role = 0; role < 2; ++role) {
    for (PauliLabel s : {kPhiMinus, kPsiPlus, kPsiMinus}) {
      for (PauliLabel in = 0; in < 4; ++in) {
        MatrixXcd rho = bell_projector(1, in);
        for (const auto& [ga, gb] : step2_rotations(variant, role, s)) {
          const MatrixXcd ua = embed_single(ga, 0, 2);
          const MatrixXcd ub = embed_single(gb, 1, 2);
          rho = ub * ua * rho * ua.adjoint() * ub.adjoint();
        }
        double defect = 0.0;
        const int got = bell_label_of(rho, 1, &defect);
        const int want = step2_label_map(variant, role != 0, s, in);
        if (defect > 1e-10) {
          fail("step 2 output not a Bell state (symbol " +
               label_to_string(s) + ")");
        }
        if (got != want) {
          fail("step 2 map mismatch: variant " + variant_name(variant) +
               (role ? " target" : " control") + " symbol " +
               label_to_string(s) + " label " + label_to_string(in) +
               ": physics " + label_to_string(static_cast<PauliLabel>(got)) +
               " vs table " + label_to_string(static_cast<PauliLabel>(want)));
        }
      }
    }
  }

  // Step 3: two pairs (control = pair 0, target = pair 1), all 16 labels.
  for (int lc = 0; lc < 4; ++lc) {
    for (int lt = 0; lt < 4; ++lt) {
      const std::uint64_t in = static_cast<std::uint64_t>(lc) | (lt << 2);
      MatrixXcd rho = bell_projector(2, in);
      MatrixXcd ga, gb;
      if (variant == Variant::kCnot) {
        ga = cnot_gate(0, 2, 4);
        gb = cnot_gate(1, 3, 4);
      } else {
        ga = cz_gate(0, 2, 4);
        gb = cz_gate(1, 3, 4);
      }
      rho = gb * ga * rho * ga.adjoint() * gb.adjoint();
      double defect = 0.0;
      const int got = bell_label_of(rho, 2, &defect);

      const int ac = lc & 1, bc = (lc >> 1) & 1;
      const int at = lt & 1, bt = (lt >> 1) & 1;
      int want_c, want_t;
      if (variant == Variant::kCnot) {
        want_c = make_label(ac ^ at, bc);
        want_t = make_label(at, bt ^ bc);
      } else {
        want_c = make_label(ac ^ bt, bc);
        want_t = make_label(at ^ bc, bt);
      }
      const int want = want_c | (want_t << 2);
      if (defect > 1e-10) fail("step 3 output not a Bell product");
      if (got != want) {
        fail("step 3 map mismatch at control " +
             label_to_string(static_cast<PauliLabel>(lc)) + " target " +
             label_to_string(static_cast<PauliLabel>(lt)));
      }
    }
  }

  // Step 4 basis change (CZ variant): bilateral y quarter-turn swaps bits.
  if (variant == Variant::kCz) {
    for (PauliLabel in = 0; in < 4; ++in) {
      MatrixXcd rho = bell_projector(1, in);
      const MatrixXcd ua = embed_single(ry(kPi / 2), 0, 2);
      const MatrixXcd ub = embed_single(ry(kPi / 2), 1, 2);
      rho = ub * ua * rho * ua.adjoint() * ub.adjoint();
      const int got = bell_label_of(rho, 1, nullptr);
      const int want = make_label(amplitude_bit(in), phase_bit(in));
      if (got != want) {
        fail("step 4 swap mismatch at label " + label_to_string(in));
      }
    }
  }

  // Measurement rule: computational outcomes agree iff amplitude bit is 0.
  for (PauliLabel in = 0; in < 4; ++in) {
    const MatrixXcd rho = bell_projector(1, in);
    double agree = 0.0;
    for (int o = 0; o < 2; ++o) {
      agree += rho((o << 1) | o, (o << 1) | o).real();
    }
    const double want = amplitude_bit(in) ? 0.0 : 1.0;
    if (std::abs(agree - want) > 1e-12) {
      fail("measurement parity rule violated at label " + label_to_string(in));
    }
  }

  if (diagnostics) *diagnostics = diag.str();
  return ok;
}

}  // namespace hashsim
