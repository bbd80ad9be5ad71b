#include "maxcurve/pgu.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "maxcurve/maximality.hpp"
#include "maxcurve/poly.hpp"

namespace maxcurve::pgu {

Mat3 mat_identity() { return mat_diag(1, 1, 1); }

Mat3 mat_diag(Elem a, Elem b, Elem c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }

Mat3 mat_mul(const Field& F, const Mat3& A, const Mat3& B) {
  Mat3 C{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Elem s = 0;
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A[3 * i + k], B[3 * k + j]));
      C[3 * i + j] = s;
    }
  }
  return C;
}

Vec3 mat_apply(const Field& F, const Mat3& A, const Vec3& v) {
  Vec3 w{};
  for (int i = 0; i < 3; ++i) {
    Elem s = 0;
    for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A[3 * i + k], v[k]));
    w[i] = s;
  }
  return w;
}

namespace {

Elem minor2(const Field& F, const Mat3& A, int r0, int r1, int c0, int c1) {
  return F.sub(F.mul(A[3 * r0 + c0], A[3 * r1 + c1]), F.mul(A[3 * r0 + c1], A[3 * r1 + c0]));
}

}  // namespace

Elem mat_det(const Field& F, const Mat3& A) {
  Elem d = F.mul(A[0], minor2(F, A, 1, 2, 1, 2));
  d = F.sub(d, F.mul(A[1], minor2(F, A, 1, 2, 0, 2)));
  return F.add(d, F.mul(A[2], minor2(F, A, 1, 2, 0, 1)));
}

Mat3 mat_inverse(const Field& F, const Mat3& A) {
  const Elem d = mat_det(F, A);
  if (d == 0) throw MathError("matrix is singular");
  const Elem di = F.inv(d);
  Mat3 R{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // cofactor of (j, i)
      const int r0 = j == 0 ? 1 : 0, r1 = j == 2 ? 1 : 2;
      const int c0 = i == 0 ? 1 : 0, c1 = i == 2 ? 1 : 2;
      Elem c = minor2(F, A, r0, r1, c0, c1);
      if ((i + j) % 2) c = F.neg(c);
      R[3 * i + j] = F.mul(c, di);
    }
  }
  return R;
}

Mat3 mat_pow(const Field& F, Mat3 A, std::uint64_t e) {
  Mat3 R = mat_identity();
  while (e) {
    if (e & 1) R = mat_mul(F, R, A);
    A = mat_mul(F, A, A);
    e >>= 1;
  }
  return R;
}

Mat3 mat_scale(const Field& F, const Mat3& A, Elem c) {
  Mat3 R;
  for (int i = 0; i < 9; ++i) R[i] = F.mul(A[i], c);
  return R;
}

bool mat_is_scalar(const Mat3& A) {
  return A[1] == 0 && A[2] == 0 && A[3] == 0 && A[5] == 0 && A[6] == 0 && A[7] == 0 && A[0] == A[4] &&
         A[4] == A[8] && A[0] != 0;
}

Mat3 canonical(const Field& F, const Mat3& A) {
  for (Elem a : A) {
    if (a != 0) return mat_scale(F, A, F.inv(a));
  }
  throw MathError("canonical: zero matrix");
}

Mat3 mat_map(const Mat3& A, const gf::Embedding& emb) {
  Mat3 R;
  for (int i = 0; i < 9; ++i) R[i] = emb(A[i]);
  return R;
}

namespace {

Factorization merge(std::initializer_list<Factorization> parts) {
  std::map<std::uint64_t, unsigned> acc;
  for (const auto& f : parts) {
    for (auto [p, e] : f) acc[p] += e;
  }
  return {acc.begin(), acc.end()};
}

Factorization power_of(Factorization f, unsigned k) {
  for (auto& pe : f) pe.second *= k;
  return f;
}

Elem hermitian_in(const Field& K, const Mat3& H, const Vec3& v, const Vec3& w) {
  Elem s = 0;
  for (int i = 0; i < 3; ++i) {
    if (v[i] == 0) continue;
    const Elem vi = K.frobenius(v[i]);
    for (int j = 0; j < 3; ++j) {
      if (H[3 * i + j] != 0 && w[j] != 0) s = K.add(s, K.mul(H[3 * i + j], K.mul(vi, w[j])));
    }
  }
  return s;
}

Vec3 normalize_point(const Field& K, Vec3 v) {
  for (Elem a : v) {
    if (a != 0) {
      const Elem inv = K.inv(a);
      for (auto& x : v) x = K.mul(x, inv);
      return v;
    }
  }
  throw MathError("zero vector is not a projective point");
}

// Basis of the null space of A over K, via reduced row echelon form.
std::vector<Vec3> nullspace(const Field& K, Mat3 A) {
  int pivot_col[3] = {-1, -1, -1};
  int row = 0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int sel = -1;
    for (int r = row; r < 3; ++r) {
      if (A[3 * r + col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    for (int j = 0; j < 3; ++j) std::swap(A[3 * row + j], A[3 * sel + j]);
    const Elem inv = K.inv(A[3 * row + col]);
    for (int j = 0; j < 3; ++j) A[3 * row + j] = K.mul(A[3 * row + j], inv);
    for (int r = 0; r < 3; ++r) {
      if (r == row || A[3 * r + col] == 0) continue;
      const Elem f = A[3 * r + col];
      for (int j = 0; j < 3; ++j) A[3 * r + j] = K.sub(A[3 * r + j], K.mul(f, A[3 * row + j]));
    }
    pivot_col[row] = col;
    ++row;
  }
  std::vector<Vec3> basis;
  for (int free = 0; free < 3; ++free) {
    bool is_pivot = false;
    for (int r = 0; r < row; ++r) is_pivot |= pivot_col[r] == free;
    if (is_pivot) continue;
    Vec3 v{0, 0, 0};
    v[free] = 1;
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = K.neg(A[3 * r + free]);
    basis.push_back(v);
  }
  return basis;
}

Mat3 minus_lambda(const Field& K, Mat3 A, Elem lambda) {
  for (int i = 0; i < 3; ++i) A[4 * i] = K.sub(A[4 * i], lambda);
  return A;
}

Mat3 alternate_form(const Field& F) { return {0, 0, 1, 0, F.neg(1), 0, 1, 0, 0}; }

// Orthonormal basis for the form H: columns b_j with h(b_i, b_j) = delta_ij.
Mat3 gram_schmidt(const HermitianGeometry& G, const Mat3& H) {
  const Field& F = G.f2();
  std::vector<Vec3> found;
  auto try_vector = [&](Vec3 v) {
    for (const auto& b : found) {
      const Elem c = hermitian_in(F, H, b, v);
      for (int i = 0; i < 3; ++i) v[i] = F.sub(v[i], F.mul(c, b[i]));
    }
    const Elem n = hermitian_in(F, H, v, v);
    if (n == 0) return;
    const Elem c = G.norm_preimage(F.inv(n));
    for (auto& x : v) x = F.mul(x, c);
    found.push_back(v);
  };
  for (int i = 0; i < 3 && found.size() < 3; ++i) {
    Vec3 e{0, 0, 0};
    e[i] = 1;
    try_vector(e);
  }
  for (Elem a = 1; a < F.size() && found.size() < 3; ++a) {
    for (int i = 0; i < 3 && found.size() < 3; ++i) {
      for (int j = 0; j < 3 && found.size() < 3; ++j) {
        if (i == j) continue;
        Vec3 v{0, 0, 0};
        v[i] = 1;
        v[j] = a;
        try_vector(v);
      }
    }
  }
  if (found.size() < 3) throw MathError("hermitian form: no orthonormal basis found");
  Mat3 B{};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) B[3 * i + j] = found[j][i];
  }
  return B;
}

}  // namespace

GroupOrder pgu_order(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("pgu_order: q must be at least 2");
  const std::uint64_t q3 = q * q * q;
  const auto v = static_cast<unsigned __int128>(q3) * (q3 + 1) * (q * q - 1);
  if (v >> 64) throw std::invalid_argument("pgu_order: overflow");
  return {static_cast<std::uint64_t>(v),
          merge({power_of(factorize(q), 3), factorize(q3 + 1), factorize(q * q - 1)})};
}

HermitianGeometry::HermitianGeometry(std::uint64_t q, Model model) : q_(q), model_(model) {
  if (!is_prime(q)) throw std::invalid_argument("hermitian geometry: q must be prime");
  if (q * q > Field::kLogTableLimit) throw std::invalid_argument("hermitian geometry: q too large");
  f2_ = gf::field_make(q, 2);
  f6_ = gf::field_make(q, 6);
  emb_ = std::make_shared<const gf::Embedding>(f2_, f6_);
  const Field& F = *f2_;
  for (Elem a = 1; a < F.size(); ++a) {
    if (F.pow(a, q + 1) == 1) norm_one_.push_back(a);
  }
  H_ = model == Model::Fermat ? mat_identity() : alternate_form(F);
  H6_ = mat_map(H_, *emb_);
  B_alt_ = gram_schmidt(*this, alternate_form(F));
  B_ = model == Model::Fermat ? mat_identity() : B_alt_;
}

Elem HermitianGeometry::norm_preimage(Elem nu) const {
  const Field& F = *f2_;
  if (nu == 0 || F.pow(nu, q_ - 1) != 1) throw MathError("norm_preimage: argument not in F_q^*");
  const std::uint64_t l = F.log(nu);
  if (l % (q_ + 1) != 0) throw MathError("norm_preimage: log not divisible by q+1");
  return F.exp(l / (q_ + 1));
}

Mat3 HermitianGeometry::conj_transpose(const Mat3& A) const {
  Mat3 R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) R[3 * i + j] = conj(A[3 * j + i]);
  }
  return R;
}

Elem HermitianGeometry::hermitian(const Vec3& v, const Vec3& w) const { return hermitian_in(*f2_, H_, v, w); }

Elem HermitianGeometry::curve_value6(const Vec3& v) const { return hermitian_in(*f6_, H6_, v, v); }

bool HermitianGeometry::is_unitary(const Mat3& M) const {
  const Field& F = *f2_;
  if (mat_det(F, M) == 0) throw MathError("is_unitary: singular matrix");
  const Mat3 C = mat_mul(F, conj_transpose(M), mat_mul(F, H_, M));
  // C must be lambda * H; find lambda from a nonzero entry of H.
  Elem lambda = 0;
  for (int i = 0; i < 9; ++i) {
    if (H_[i] != 0) {
      lambda = F.div(C[i], H_[i]);
      break;
    }
  }
  if (lambda == 0) return false;
  for (int i = 0; i < 9; ++i) {
    if (C[i] != F.mul(lambda, H_[i])) return false;
  }
  return true;
}

std::uint64_t HermitianGeometry::isotropic_count() const {
  const Field& F = *f2_;
  const std::uint64_t n = F.size();
  std::uint64_t count = 0;
  // Points (1:y:z), (0:1:z), (0:0:1).
  for (Elem y = 0; y < n; ++y) {
    for (Elem z = 0; z < n; ++z) count += hermitian({1, y, z}, {1, y, z}) == 0;
  }
  for (Elem z = 0; z < n; ++z) count += hermitian({0, 1, z}, {0, 1, z}) == 0;
  count += hermitian({0, 0, 1}, {0, 0, 1}) == 0;
  return count;
}

std::uint64_t projective_order(const HermitianGeometry& G, const Mat3& M) {
  const Field& F = G.f2();
  if (mat_det(F, M) == 0) throw MathError("projective_order: singular matrix");
  const auto ord = pgu_order(G.q());
  if (!mat_is_scalar(mat_pow(F, M, ord.value))) {
    throw MathError("projective_order: element order does not divide |PGU(3,q)|");
  }
  std::uint64_t n = ord.value;
  for (auto [p, e] : ord.factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (!mat_is_scalar(mat_pow(F, M, n / p))) break;
      n /= p;
    }
  }
  return n;
}

std::string to_string(ElementType t) {
  switch (t) {
    case ElementType::Identity: return "identity";
    case ElementType::Homology: return "homology";
    case ElementType::TameTriangleB1: return "tame_triangle_b1";
    case ElementType::TameTriangleB2: return "tame_triangle_b2";
    case ElementType::SingerB3: return "singer_b3";
    case ElementType::Elation: return "elation";
    case ElementType::NonElationUnipotent: return "nonelation_unipotent";
    case ElementType::MixedPd: return "mixed_pd";
  }
  return "?";
}

std::vector<FixedPoint> FixedLocus::curve_points() const {
  std::vector<FixedPoint> out;
  for (const auto& P : isolated) {
    if (P.on_curve) out.push_back(P);
  }
  out.insert(out.end(), axis_curve_points.begin(), axis_curve_points.end());
  return out;
}

namespace {

struct Eigen {
  Elem value;         // over F_{q^2} if rational, else over F_{q^6}
  unsigned multiplicity;
  bool rational;
};

struct EigenData {
  std::vector<Eigen> values;
  bool all_rational;
};

EigenData eigenvalues(const HermitianGeometry& G, const Mat3& M) {
  const Field& F = G.f2();
  const Elem tr = F.add(F.add(M[0], M[4]), M[8]);
  const Elem c2 = F.add(F.add(minor2(F, M, 0, 1, 0, 1), minor2(F, M, 0, 2, 0, 2)), minor2(F, M, 1, 2, 1, 2));
  const poly::Poly chi{F.neg(mat_det(F, M)), c2, F.neg(tr), 1};
  EigenData out{{}, true};
  for (const auto& fp : poly::factor(F, chi)) {
    const int d = poly::degree(fp.factor);
    if (d == 1) {
      out.values.push_back({F.neg(fp.factor[0]), fp.multiplicity, true});
    } else if (d == 3) {
      const Field& K = G.f6();
      poly::Poly chi6;
      for (Elem c : fp.factor) chi6.push_back(G.embed()(c));
      for (Elem r : poly::roots(K, chi6)) out.values.push_back({r, 1, false});
      out.all_rational = false;
    } else {
      throw MathError("eigenvalues in F_{q^4}: matrix is not unitary");
    }
  }
  return out;
}

FixedPoint make_rational_point(const HermitianGeometry& G, const Vec3& v) {
  const Vec3 n = normalize_point(G.f2(), v);
  Vec3 c6;
  for (int i = 0; i < 3; ++i) c6[i] = G.embed()(n[i]);
  return {c6, n, G.hermitian(n, n) == 0};
}

std::uint64_t unipotent_or_tame(std::uint64_t order, std::uint64_t p) {
  std::uint64_t n = order;
  while (n % p == 0) n /= p;
  return n;
}

}  // namespace

FixedLocus fixed_points(const HermitianGeometry& G, const Mat3& M) {
  if (mat_is_scalar(M)) throw std::invalid_argument("fixed_points: identity element");
  FixedLocus L;
  const auto eig = eigenvalues(G, M);
  if (eig.all_rational) {
    const Field& F = G.f2();
    for (const auto& e : eig.values) {
      const auto ker = nullspace(F, minus_lambda(F, M, e.value));
      if (ker.size() == 1) {
        L.isolated.push_back(make_rational_point(G, ker[0]));
      } else if (ker.size() == 2) {
        L.has_axis = true;
        // Rational line: curve points are found among its q^2+1 rational points.
        const Vec3& u = ker[0];
        const Vec3& w = ker[1];
        if (G.hermitian(w, w) == 0) L.axis_curve_points.push_back(make_rational_point(G, w));
        for (Elem s = 0; s < F.size(); ++s) {
          Vec3 v;
          for (int i = 0; i < 3; ++i) v[i] = F.add(u[i], F.mul(s, w[i]));
          if (G.hermitian(v, v) == 0) L.axis_curve_points.push_back(make_rational_point(G, v));
        }
      }
    }
  } else {
    const Field& K = G.f6();
    const Mat3 M6 = mat_map(M, G.embed());
    for (const auto& e : eig.values) {
      if (e.rational) {
        const auto ker = nullspace(G.f2(), minus_lambda(G.f2(), M, e.value));
        for (const auto& v : ker) L.isolated.push_back(make_rational_point(G, v));
        continue;
      }
      for (const auto& v : nullspace(K, minus_lambda(K, M6, e.value))) {
        const Vec3 n = normalize_point(K, v);
        L.isolated.push_back({n, std::nullopt, G.curve_value6(n) == 0});
      }
    }
  }
  return L;
}

Classification classify(const HermitianGeometry& G, const Mat3& M) {
  if (mat_is_scalar(M)) return {ElementType::Identity, 1, {}};
  const std::uint64_t order = projective_order(G, M);
  const std::uint64_t p = G.q();
  FixedLocus L = fixed_points(G, M);
  const std::uint64_t tame = unipotent_or_tame(order, p);
  if (tame == 1) {
    const ElementType t = L.has_axis ? ElementType::Elation : ElementType::NonElationUnipotent;
    return {t, order, std::move(L)};
  }
  if (tame != order) return {ElementType::MixedPd, order, std::move(L)};
  if (L.has_axis) return {ElementType::Homology, order, std::move(L)};
  if (L.isolated.size() != 3) throw MathError("classify: tame element without three fixed points");
  if (!L.isolated[0].rational()) return {ElementType::SingerB3, order, std::move(L)};
  const auto on = std::count_if(L.isolated.begin(), L.isolated.end(), [](const FixedPoint& P) { return P.on_curve; });
  if (on == 0) return {ElementType::TameTriangleB1, order, std::move(L)};
  if (on == 2) return {ElementType::TameTriangleB2, order, std::move(L)};
  throw MathError("classify: fixed triangle with " + std::to_string(on) + " vertices on the curve");
}

std::uint64_t contribution_table(ElementType t, std::uint64_t q) {
  switch (t) {
    case ElementType::Identity: throw std::invalid_argument("contribution_table: identity element");
    case ElementType::Homology: return q + 1;
    case ElementType::TameTriangleB1: return 0;
    case ElementType::TameTriangleB2: return 2;
    case ElementType::SingerB3: return 3;
    case ElementType::Elation: return q + 2;
    case ElementType::NonElationUnipotent: return 2;
    case ElementType::MixedPd: return 1;
  }
  throw MathError("contribution_table: unclassified element");
}

namespace {

// Truncated power series in the local parameter, length = precision.
using Series = std::vector<Elem>;

Series s_add(const Field& K, const Series& a, const Series& b) {
  Series r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.add(a[i], b[i]);
  return r;
}

Series s_scale(const Field& K, const Series& a, Elem c) {
  Series r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.mul(a[i], c);
  return r;
}

Series s_mul(const Field& K, const Series& a, const Series& b) {
  const std::size_t n = a.size();
  Series r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] != 0) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
  }
  return r;
}

Series s_inv(const Field& K, const Series& a) {
  const std::size_t n = a.size();
  if (a[0] == 0) throw MathError("series inverse: zero constant term");
  Series b(n, 0);
  const Elem b0 = K.inv(a[0]);
  b[0] = b0;
  for (std::size_t k = 1; k < n; ++k) {
    Elem s = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i] != 0 && b[k - i] != 0) s = K.add(s, K.mul(a[i], b[k - i]));
    }
    b[k] = K.neg(K.mul(b0, s));
  }
  return b;
}

// (sum a_n t^n)^q = sum a_n^q t^{nq}
Series s_twist(const Field& K, const Series& a, std::uint64_t q) {
  Series r(a.size(), 0);
  for (std::size_t i = 0; i * q < a.size(); ++i) r[i * q] = K.frobenius(a[i]);
  return r;
}

bool s_is_zero(const Series& a) {
  return std::all_of(a.begin(), a.end(), [](Elem x) { return x == 0; });
}

// Valuation of sigma(t) - t at P, or nullopt if it is at least `precision`.
std::optional<unsigned> valuation_at(const Field& K, std::uint64_t q, const Mat3& H, const Mat3& M, const Vec3& P,
                                     std::size_t precision) {
  int chart = -1;
  for (int i = 0; i < 3; ++i) {
    if (P[i] != 0) {
      chart = i;
      break;
    }
  }
  Vec3 Pn = P;
  {
    const Elem inv = K.inv(P[chart]);
    for (auto& x : Pn) x = K.mul(x, inv);
  }
  // Gradient of F(X) = sum H_ij X_i^q X_j at P.
  Vec3 grad{};
  for (int j = 0; j < 3; ++j) {
    Elem s = 0;
    for (int i = 0; i < 3; ++i) {
      if (H[3 * i + j] != 0) s = K.add(s, K.mul(H[3 * i + j], K.frobenius(Pn[i])));
    }
    grad[j] = s;
  }
  int solved = -1, param = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == chart) continue;
    if (solved < 0 && grad[i] != 0) {
      solved = i;
    } else {
      param = i;
    }
  }
  if (solved < 0) throw MathError("valuation: singular point on the Hermitian curve");
  if (param < 0) {
    for (int i = 0; i < 3; ++i) {
      if (i != chart && i != solved) param = i;
    }
  }

  std::array<Series, 3> X;
  for (auto& s : X) s.assign(precision, 0);
  X[chart][0] = 1;
  X[param][0] = Pn[param];
  if (precision > 1) X[param][1] = 1;
  X[solved][0] = Pn[solved];

  bool converged = false;
  for (std::size_t iter = 0; iter < precision + 8; ++iter) {
    std::array<Series, 3> tw;
    for (int i = 0; i < 3; ++i) tw[i] = s_twist(K, X[i], q);
    Series F(precision, 0), Fu(precision, 0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Elem h = H[3 * i + j];
        if (h == 0) continue;
        F = s_add(K, F, s_scale(K, s_mul(K, tw[i], X[j]), h));
      }
      if (H[3 * i + solved] != 0) Fu = s_add(K, Fu, s_scale(K, tw[i], H[3 * i + solved]));
    }
    if (s_is_zero(F)) {
      converged = true;
      break;
    }
    const Series step = s_mul(K, F, s_inv(K, Fu));
    for (std::size_t n = 0; n < precision; ++n) X[solved][n] = K.sub(X[solved][n], step[n]);
  }
  if (!converged) throw MathError("valuation: branch expansion did not converge");

  std::array<Series, 3> W;
  for (int i = 0; i < 3; ++i) {
    W[i].assign(precision, 0);
    for (int j = 0; j < 3; ++j) {
      if (M[3 * i + j] != 0) W[i] = s_add(K, W[i], s_scale(K, X[j], M[3 * i + j]));
    }
  }
  Series diff = s_mul(K, W[param], s_inv(K, W[chart]));
  diff[0] = K.sub(diff[0], Pn[param]);
  if (precision > 1) diff[1] = K.sub(diff[1], 1);
  for (std::size_t n = 0; n < precision; ++n) {
    if (diff[n] != 0) return static_cast<unsigned>(n);
  }
  return std::nullopt;
}

}  // namespace

unsigned local_valuation(const HermitianGeometry& G, const Mat3& M, const FixedPoint& P, unsigned max_precision) {
  if (!P.on_curve) throw std::invalid_argument("local_valuation: point is not on the curve");
  const bool rational = P.rational();
  const Field& K = rational ? G.f2() : G.f6();
  const Mat3 H = rational ? G.form() : mat_map(G.form(), G.embed());
  const Mat3 MK = rational ? M : mat_map(M, G.embed());
  const Vec3& coords = rational ? *P.rational_coords : P.coords;
  if (!mat_is_scalar(M)) {
    // sigma must fix P
    const Vec3 image = normalize_point(K, mat_apply(K, MK, coords));
    if (image != normalize_point(K, coords)) throw std::invalid_argument("local_valuation: point is not fixed");
  }
  std::size_t precision = std::min<std::size_t>(8, max_precision);
  for (;;) {
    if (auto v = valuation_at(K, G.q(), H, MK, coords, precision)) return *v;
    if (precision >= max_precision) {
      throw PrecisionExhausted("valuation: precision " + std::to_string(max_precision) + " exhausted");
    }
    precision = std::min<std::size_t>(precision * 2, max_precision);
  }
}

std::uint64_t contribution_valuation(const HermitianGeometry& G, const Mat3& M) {
  if (mat_is_scalar(M)) throw std::invalid_argument("contribution_valuation: identity element");
  const auto max_precision = static_cast<unsigned>(G.q() + 4);
  std::uint64_t total = 0;
  for (const auto& P : fixed_points(G, M).curve_points()) total += local_valuation(G, M, P, max_precision);
  return total;
}

ContributionReport compare_contributions(const HermitianGeometry& G, const Mat3& M) {
  const auto c = classify(G, M);
  const std::uint64_t table = contribution_table(c.type, G.q());
  const std::uint64_t val = contribution_valuation(G, M);
  return {canonical(G.f2(), M), c.type, c.order, table, val, table == val};
}

std::uint64_t hermitian_genus(std::uint64_t q) { return q * (q - 1) / 2; }

DifferentResult subgroup_different(const HermitianGeometry& G, std::span<const Mat3> elements) {
  if (elements.empty()) throw std::invalid_argument("subgroup_different: empty group");
  std::uint64_t deg = 0;
  for (const auto& M : elements) {
    if (!G.is_unitary(M)) throw std::invalid_argument("subgroup_different: element is not unitary");
    if (mat_is_scalar(M)) continue;
    deg += contribution_table(classify(G, M).type, G.q());
  }
  return {deg, maximality::rh_quotient_genus(hermitian_genus(G.q()), elements.size(), deg)};
}

Mat3 transport(const HermitianGeometry& G, const Mat3& M, Model from) {
  if (from == G.model()) return canonical(G.f2(), M);
  const Field& F = G.f2();
  const Mat3& B = G.alternate_basis();
  const Mat3 Bi = mat_inverse(F, B);
  // Fermat coordinates = B^{-1} * alternate coordinates.
  if (from == Model::Alternate) return canonical(F, mat_mul(F, Bi, mat_mul(F, M, B)));
  return canonical(F, mat_mul(F, B, mat_mul(F, M, Bi)));
}

namespace {

Elem element_of_order(const Field& F, std::uint64_t d) {
  if ((F.size() - 1) % d != 0) throw std::invalid_argument("no element of order " + std::to_string(d));
  return F.pow(F.generator(), (F.size() - 1) / d);
}

Mat3 upper_unipotent(const Field& F, std::uint64_t q, Elem b, Elem c) {
  return {1, F.pow(b, q), c, 0, 1, b, 0, 0, 1};
}

// c with c^q + c = n for n in F_q, q odd.
Elem half_of(const Field& F, Elem n) { return F.div(n, F.from_int(2)); }

void require_odd(const HermitianGeometry& G, const char* what) {
  if (G.q() == 2) throw std::invalid_argument(std::string(what) + ": requires odd q");
}

}  // namespace

std::vector<Mat3> diagonal_cyclic(const HermitianGeometry& G, std::uint64_t d) {
  if (d == 0 || (G.q() + 1) % d != 0) throw std::invalid_argument("diagonal_cyclic: d must divide q+1");
  const Elem l = element_of_order(G.f2(), d);
  const Mat3 M = G.model() == Model::Fermat ? mat_diag(l, 1, 1) : mat_diag(1, l, 1);
  return {canonical(G.f2(), M)};
}

std::vector<Mat3> torus_cyclic(const HermitianGeometry& G) {
  const Field& F = G.f2();
  const Elem xi = F.generator();
  return {transport(G, mat_diag(F.pow(xi, G.q() + 1), xi, 1), Model::Alternate)};
}

namespace {

// x -> x + b z with b^q + b = 0, alternate coordinates.
Mat3 alternate_elation(const HermitianGeometry& G) {
  const Field& F = G.f2();
  for (Elem b = 1; b < F.size(); ++b) {
    if (F.add(G.conj(b), b) == 0) return {1, 0, b, 0, 1, 0, 0, 0, 1};
  }
  throw MathError("elation_group: no trace-zero element");
}

}  // namespace

std::vector<Mat3> elation_group(const HermitianGeometry& G) {
  return {transport(G, alternate_elation(G), Model::Alternate)};
}

std::vector<Mat3> nonelation_cyclic(const HermitianGeometry& G) {
  require_odd(G, "nonelation_cyclic");
  const Field& F = G.f2();
  return {transport(G, upper_unipotent(F, G.q(), 1, half_of(F, 1)), Model::Alternate)};
}

std::vector<Mat3> mixed_cyclic(const HermitianGeometry& G) {
  require_odd(G, "mixed_cyclic");
  const Field& F = G.f2();
  const Mat3 inv = mat_diag(1, F.neg(1), 1);
  return {transport(G, mat_mul(F, inv, alternate_elation(G)), Model::Alternate)};
}

std::vector<Mat3> sylow_p(const HermitianGeometry& G) {
  require_odd(G, "sylow_p");
  const Field& F = G.f2();
  const Elem w = F.generator();
  const Elem nw = F.pow(w, G.q() + 1);
  std::vector<Mat3> gens = elation_group(G);
  gens.push_back(transport(G, upper_unipotent(F, G.q(), 1, half_of(F, 1)), Model::Alternate));
  gens.push_back(transport(G, upper_unipotent(F, G.q(), w, half_of(F, nw)), Model::Alternate));
  return gens;
}

std::vector<Mat3> triangle_stabilizer(const HermitianGeometry& G) {
  const Elem a = element_of_order(G.f2(), G.q() + 1);
  return {transport(G, mat_diag(a, 1, 1), Model::Fermat), transport(G, mat_diag(1, a, 1), Model::Fermat)};
}

Mat3 random_unitary(const HermitianGeometry& G, std::mt19937_64& rng) {
  const Field& F = G.f2();
  std::uniform_int_distribution<Elem> elem(0, F.size() - 1);
  std::uniform_int_distribution<std::size_t> unit(0, G.norm_one().size() - 1);
  std::vector<Vec3> cols;
  while (cols.size() < 3) {
    Vec3 v{elem(rng), elem(rng), elem(rng)};
    for (const auto& b : cols) {
      Elem c = 0;
      for (int i = 0; i < 3; ++i) c = F.add(c, F.mul(G.conj(b[i]), v[i]));
      for (int i = 0; i < 3; ++i) v[i] = F.sub(v[i], F.mul(c, b[i]));
    }
    Elem n = 0;
    for (int i = 0; i < 3; ++i) n = F.add(n, F.mul(G.conj(v[i]), v[i]));
    if (n == 0) continue;
    const Elem c = F.mul(G.norm_preimage(F.inv(n)), G.norm_one()[unit(rng)]);
    for (auto& x : v) x = F.mul(x, c);
    cols.push_back(v);
  }
  Mat3 U{};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) U[3 * i + j] = cols[j][i];
  }
  // U is unitary for the identity form; conjugate into G's coordinates.
  const Mat3& B = G.orthonormal_basis();
  return canonical(F, mat_mul(F, B, mat_mul(F, U, mat_inverse(F, B))));
}

std::vector<Mat3> singer_cyclic(const HermitianGeometry& G, std::uint64_t seed) {
  const std::uint64_t q = G.q();
  const std::uint64_t target = q * q - q + 1;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Mat3 M = random_unitary(G, rng);
    if (projective_order(G, M) == target) return {M};
  }
  throw MathError("singer_cyclic: search exhausted");
}

std::vector<std::string> serialize(const Field& F, const Mat3& M) {
  std::vector<std::string> out;
  for (Elem a : M) out.push_back(F.to_string(a));
  return out;
}

}  // namespace maxcurve::pgu
