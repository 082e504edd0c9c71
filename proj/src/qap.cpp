#include "qaplon/qap.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qaplon/ioutil.hpp"
#include "qaplon/kernels.hpp"
#include "qaplon/rng.hpp"

namespace qaplon {

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return make_permutation_unchecked(std::move(v));
}

Permutation::Permutation(std::vector<int> values) : v_(std::move(values)) {
  if (!is_permutation_vector(v_))
    throw std::invalid_argument("Permutation: values are not a bijection on {0..n-1}");
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(v[static_cast<std::size_t>(i)], v[j]);
  }
  return make_permutation_unchecked(std::move(v));
}

bool is_permutation_vector(std::span<const int> v) {
  const int n = static_cast<int>(v.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int x : v) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

namespace {

// All intermediates in cost/delta arithmetic are bounded by 4 n^2 maxA maxB;
// below 2^53 every double operation on integer matrices is exact.
bool integer_arithmetic_is_exact(int n, const std::vector<double>& a,
                                 const std::vector<double>& b) {
  double max_a = 0.0, max_b = 0.0;
  for (double v : a) {
    if (v != std::floor(v)) return false;
    if (v > max_a) max_a = v;
  }
  for (double v : b) {
    if (v != std::floor(v)) return false;
    if (v > max_b) max_b = v;
  }
  const double bound = 4.0 * n * n * max_a * max_b;
  return bound <= 9007199254740992.0;  // 2^53
}

}  // namespace

QapInstance::QapInstance(int n, std::vector<double> a, std::vector<double> b,
                         std::string label)
    : n_(n), a_(std::move(a)), b_(std::move(b)), label_(std::move(label)) {
  if (n_ < 2) throw std::invalid_argument("QapInstance: n must be >= 2");
  const std::size_t nn = static_cast<std::size_t>(n_) * n_;
  if (a_.size() != nn || b_.size() != nn)
    throw std::invalid_argument("QapInstance: matrices must be exactly n x n");
  for (double v : a_) {
    if (!std::isfinite(v) || v < 0)
      throw std::invalid_argument("QapInstance: A entries must be finite and >= 0");
    if (v > max_entry_) max_entry_ = v;
  }
  for (double v : b_) {
    if (!std::isfinite(v) || v < 0)
      throw std::invalid_argument("QapInstance: B entries must be finite and >= 0");
    if (v > max_entry_) max_entry_ = v;
  }
  exact_ = integer_arithmetic_is_exact(n_, a_, b_);
  at_.resize(nn);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) at_[static_cast<std::size_t>(j) * n_ + i] = a_[static_cast<std::size_t>(i) * n_ + j];
}

double cost(const QapInstance& inst, const Permutation& p) {
  if (p.size() != inst.n())
    throw std::invalid_argument("cost: permutation length does not match instance");
  const int n = inst.n();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* arow = inst.a_row(i);
    const double* brow = inst.b_row(p[i]);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += arow[j] * brow[p[j]];
    total += s;
  }
  return total;
}

double swap_delta(const QapInstance& inst, const Permutation& p, SwapMove m) {
  const int n = inst.n();
  if (p.size() != n) throw std::invalid_argument("swap_delta: permutation length mismatch");
  if (m.i < 0 || m.j >= n || m.i >= m.j)
    throw std::invalid_argument("swap_delta: invalid move indices");
  const int r = m.i, s = m.j;
  const int pr = p[r], ps = p[s];
  double d = (inst.a(r, r) - inst.a(s, s)) * (inst.b(ps, ps) - inst.b(pr, pr)) +
             (inst.a(r, s) - inst.a(s, r)) * (inst.b(ps, pr) - inst.b(pr, ps));
  for (int k = 0; k < n; ++k) {
    if (k == r || k == s) continue;
    const int pk = p[k];
    d += (inst.a(r, k) - inst.a(s, k)) * (inst.b(ps, pk) - inst.b(pr, pk)) +
         (inst.a(k, r) - inst.a(k, s)) * (inst.b(pk, ps) - inst.b(pk, pr));
  }
  return d;
}

std::vector<SwapMove> swap_moves(int n) {
  if (n < 2) throw std::invalid_argument("swap_moves: n must be >= 2");
  std::vector<SwapMove> moves;
  moves.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n; ++j) moves.push_back({i, j});
  return moves;
}

DeltaScanner::DeltaScanner(const QapInstance& inst)
    : inst_(&inst),
      c_(static_cast<std::size_t>(inst.n()) * inst.n()),
      ct_(static_cast<std::size_t>(inst.n()) * inst.n()),
      n_(inst.n()) {}

void DeltaScanner::load(std::span<const int> p) {
  assert(static_cast<int>(p.size()) == n_);
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const double* brow = inst_->b_row(p[i]);
    double* crow = c_.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      double v = brow[p[j]];
      crow[j] = v;
      ct_[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
}

double DeltaScanner::delta(SwapMove m) const {
  const auto& k = kernels::active();
  const int n = n_;
  const int r = m.i, s = m.j;
  const double* ar = inst_->a_row(r);
  const double* as = inst_->a_row(s);
  const double* cr = c_.data() + static_cast<std::size_t>(r) * n;
  const double* cs = c_.data() + static_cast<std::size_t>(s) * n;
  // Row term over all k, then back out k = r and k = s.
  double row = k.diff_dot(ar, as, cr, cs, static_cast<std::size_t>(n));
  row -= (ar[r] - as[r]) * (cs[r] - cr[r]);
  row -= (ar[s] - as[s]) * (cs[s] - cr[s]);

  const double* atr = inst_->at_row(r);
  const double* ats = inst_->at_row(s);
  const double* ctr = ct_.data() + static_cast<std::size_t>(r) * n;
  const double* cts = ct_.data() + static_cast<std::size_t>(s) * n;
  double col = k.diff_dot(atr, ats, ctr, cts, static_cast<std::size_t>(n));
  col -= (atr[r] - ats[r]) * (cts[r] - ctr[r]);
  col -= (atr[s] - ats[s]) * (cts[s] - ctr[s]);

  const double* crr = c_.data() + static_cast<std::size_t>(r) * n;
  const double* css = c_.data() + static_cast<std::size_t>(s) * n;
  double corner = (ar[r] - as[s]) * (css[s] - crr[r]) +
                  (ar[s] - as[r]) * (css[r] - crr[s]);
  return row + col + corner;
}

std::optional<DeltaScanner::Best> DeltaScanner::best_improving() const {
  std::optional<Best> best;
  for (int i = 0; i < n_ - 1; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      double d = delta({i, j});
      if (d < 0 && (!best || d < best->delta)) best = Best{{i, j}, d};
    }
  }
  return best;
}

namespace {

struct TokenReader {
  const char* cur;
  const char* end;

  bool next(std::string_view& tok) {
    while (cur != end && std::isspace(static_cast<unsigned char>(*cur))) ++cur;
    if (cur == end) return false;
    const char* start = cur;
    while (cur != end && !std::isspace(static_cast<unsigned char>(*cur))) ++cur;
    tok = std::string_view(start, static_cast<std::size_t>(cur - start));
    return true;
  }
};

double parse_entry(std::string_view tok, const char* what) {
  double v;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw std::runtime_error(std::string("instance parse: non-numeric ") + what + " '" +
                             std::string(tok) + "'");
  return v;
}

}  // namespace

QapInstance read_instance(std::string_view text, std::string label) {
  TokenReader rd{text.data(), text.data() + text.size()};
  std::string_view tok;
  if (!rd.next(tok)) throw std::runtime_error("instance parse: empty input");
  int n;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || n < 2)
    throw std::runtime_error("instance parse: malformed dimension line '" + std::string(tok) + "'");

  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<double> a(nn), b(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    if (!rd.next(tok))
      throw std::runtime_error("instance parse: matrix A has too few entries");
    a[k] = parse_entry(tok, "entry in A");
  }
  for (std::size_t k = 0; k < nn; ++k) {
    if (!rd.next(tok))
      throw std::runtime_error("instance parse: matrix B has too few entries");
    b[k] = parse_entry(tok, "entry in B");
  }
  if (rd.next(tok))
    throw std::runtime_error("instance parse: trailing entries after matrix B");
  return QapInstance(n, std::move(a), std::move(b), std::move(label));
}

QapInstance read_instance_file(const std::string& path) {
  return read_instance(read_file(path), path);
}

std::string write_instance(const QapInstance& inst) {
  const int n = inst.n();
  std::string out = std::to_string(n) + "\n\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += format_double(inst.a(i, j));
    }
    out += '\n';
  }
  out += "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += format_double(inst.b(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qaplon
