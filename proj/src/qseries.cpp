#include "regpet/qseries.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace regpet {

QSeries::QSeries(int denom, long order, double weight, std::string label)
    : denom_(denom), order_(order), weight_(weight), label_(std::move(label)) {
  if (denom < 1) throw domain_error("denom must be positive");
}

mpq_class QSeries::coeff(long n) const {
  if (n >= order_) throw domain_error("coefficient beyond truncation order");
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? mpq_class(0) : it->second;
}

void QSeries::set(long n, const mpq_class& c) {
  if (n >= order_) throw domain_error("exponent beyond truncation order");
  if (c == 0)
    coeffs_.erase(n);
  else
    coeffs_[n] = c;
}

long QSeries::valuation() const { return coeffs_.empty() ? order_ : coeffs_.begin()->first; }

bool QSeries::is_zero() const { return coeffs_.empty(); }

QSeries QSeries::truncated(long new_order) const {
  QSeries r(denom_, std::min(new_order, order_), weight_, label_);
  for (auto& [n, c] : coeffs_)
    if (n < r.order_) r.coeffs_.emplace(n, c);
  return r;
}

QSeries QSeries::principal_part() const {
  QSeries r(denom_, order_, weight_, label_);
  for (auto& [n, c] : coeffs_)
    if (n < 0) r.coeffs_.emplace(n, c);
  return r;
}

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& [n, c] : r.coeffs_) c = -c;
  return r;
}

static void check_grid(const QSeries& a, const QSeries& b) {
  if (a.denom() != b.denom()) throw domain_error("incompatible exponent grids");
}

QSeries& QSeries::operator+=(const QSeries& o) {
  check_grid(*this, o);
  order_ = std::min(order_, o.order_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = it->first >= order_ ? coeffs_.erase(it) : std::next(it);
  for (auto& [n, c] : o.coeffs_) {
    if (n >= order_) break;
    mpq_class v = coeff(n) + c;
    set(n, v);
  }
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const mpq_class& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [n, c] : coeffs_) c *= s;
  return *this;
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
QSeries operator*(QSeries a, const mpq_class& s) { return a *= s; }

QSeries operator*(const QSeries& a, const QSeries& b) {
  check_grid(a, b);
  long va = a.valuation(), vb = b.valuation();
  long ord = std::min(a.order() + vb, b.order() + va);
  QSeries r(a.denom(), ord, a.weight() + b.weight());
  std::map<long, mpq_class> acc;
  for (auto& [n, c] : a.coeffs_) {
    if (n + vb >= ord) break;
    for (auto& [m, d] : b.coeffs_) {
      if (n + m >= ord) break;
      acc[n + m] += c * d;
    }
  }
  for (auto& [n, c] : acc)
    if (c != 0) r.coeffs_.emplace(n, c);
  return r;
}

QSeries inverse(const QSeries& b) {
  if (b.is_zero()) throw domain_error("division by a series with zero leading term");
  long v = b.valuation();
  long ord = b.order() - 2 * v;
  mpq_class lead = b.coeff(v);
  QSeries r(b.denom(), ord, -b.weight());
  long len = b.order() - v;
  std::vector<mpq_class> bc(static_cast<size_t>(len)), d(static_cast<size_t>(len));
  for (auto& [n, c] : b.coeffs()) bc[size_t(n - v)] = c;
  for (long i = 0; i < len; ++i) {
    mpq_class s = i == 0 ? mpq_class(1) : mpq_class(0);
    for (long j = 1; j <= i; ++j)
      if (bc[size_t(j)] != 0) s -= bc[size_t(j)] * d[size_t(i - j)];
    d[size_t(i)] = s / lead;
    r.set(i - v, d[size_t(i)]);
  }
  return r;
}

QSeries operator/(const QSeries& a, const QSeries& b) { return a * inverse(b); }

QSeries pow(const QSeries& a, long e) {
  if (e < 0) return pow(inverse(a), -e);
  if (e == 0) return constant_series(1, a.order() - a.valuation(), a.denom());
  QSeries result, base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QSeries monomial(long n, const mpq_class& c, long order, int denom) {
  QSeries r(denom, order);
  if (n < order) r.set(n, c);
  return r;
}

QSeries constant_series(const mpq_class& c, long order, int denom) { return monomial(0, c, order, denom); }

mpz_class sigma(long r, long n) {
  mpz_class s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)d, (unsigned long)r);
    s += t;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)e, (unsigned long)r);
      s += t;
    }
  }
  return s;
}

QSeries eisenstein(int k, long order) {
  if (k != 4 && k != 6) throw domain_error("only E4 and E6 are built in");
  QSeries e(1, order, k, k == 4 ? "E4" : "E6");
  long cst = k == 4 ? 240 : -504;
  if (order > 0) e.set(0, 1);
  for (long n = 1; n < order; ++n) e.set(n, mpq_class(cst * sigma(k - 1, n)));
  return e;
}

static QSeries delta_series(long order) {
  QSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
  QSeries d = (pow(e4, 3) - pow(e6, 2)) * mpq_class(1, 1728);
  d.set_weight(12);
  d.set_label("Delta");
  return d;
}

static QSeries eta24_series(long order) {
  // q prod (1-q^n)^24 via the Euler pentagonal expansion of prod(1-q^n)
  long len = std::max(0L, order - 1);
  std::vector<mpz_class> e(size_t(len), 0);
  for (long k = 0;; ++k) {
    bool any = false;
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn == -1) continue;
      long kk = sgn * k;
      long p = kk * (3 * kk - 1) / 2;
      if (p < len) {
        e[size_t(p)] += (k % 2 ? -1 : 1);
        any = true;
      }
    }
    if (!any) break;
  }
  std::vector<mpz_class> acc(size_t(len), 0);
  if (len > 0) acc[0] = 1;
  for (int t = 0; t < 24; ++t) {
    std::vector<mpz_class> nxt(size_t(len), 0);
    for (long i = 0; i < len; ++i) {
      if (acc[size_t(i)] == 0) continue;
      for (long j = 0; i + j < len; ++j)
        if (e[size_t(j)] != 0) nxt[size_t(i + j)] += acc[size_t(i)] * e[size_t(j)];
    }
    acc.swap(nxt);
  }
  QSeries r(1, order, 12, "eta24");
  for (long i = 0; i < len; ++i) r.set(i + 1, mpq_class(acc[size_t(i)]));
  return r;
}

FormLabel parse_label(const std::string& s) {
  auto arg = [&](const std::string& pre) -> std::string {
    return s.substr(pre.size(), s.size() - pre.size() - 1);
  };
  if (s == "E4") return {Family::E4};
  if (s == "E6") return {Family::E6};
  if (s == "Delta") return {Family::Delta};
  if (s == "j") return {Family::j};
  if (s == "eta24") return {Family::eta24};
  if (s.rfind("faber(", 0) == 0) return {Family::faber, 0, std::stol(arg("faber("))};
  if (s.rfind("weight2_basis(", 0) == 0) return {Family::weight2_basis, 2, std::stol(arg("weight2_basis("))};
  if (s.rfind("wh_basis(", 0) == 0) {
    std::string a = arg("wh_basis(");
    auto comma = a.find(',');
    if (comma == std::string::npos) throw domain_error("wh_basis label needs (k,m)");
    return {Family::wh_basis, std::stoi(a.substr(0, comma)), std::stol(a.substr(comma + 1))};
  }
  throw domain_error("unsupported label: " + s);
}

QSeries classical_form(const FormLabel& label, long order) {
  if (order < 1) throw domain_error("order must be at least 1");
  switch (label.family) {
    case Family::E4: return eisenstein(4, order);
    case Family::E6: return eisenstein(6, order);
    case Family::Delta: return delta_series(order);
    case Family::eta24: return eta24_series(order);
    case Family::j: {
      QSeries d = delta_series(order + 2);
      QSeries j = pow(eisenstein(4, order + 1), 3) / d;
      j = j.truncated(order);
      j.set_weight(0);
      j.set_label("j");
      return j;
    }
    case Family::faber: return faber_basis(label.m, order);
    case Family::wh_basis: return wh_basis(label.k, label.m, order);
    case Family::weight2_basis: return wh_basis(2, label.m, order);
  }
  throw domain_error("unsupported label");
}

QSeries classical_form(const std::string& label, long order) { return classical_form(parse_label(label), order); }

static int base_weight(int k) {
  static const int table[6] = {0, 14, 4, 6, 8, 10};
  return table[((k % 12) + 12) % 12 / 2];
}

long wh_min_pole(int k) {
  if (k % 2) throw domain_error("weight must be even");
  int kp = base_weight(k);
  long ell = (k - kp) / 12;
  return -ell;
}

QSeries wh_basis(int k, long m, long order) {
  if (k % 2) throw domain_error("weight must be even");
  int kp = base_weight(k);
  long ell = (k - kp) / 12;
  if (m < -ell) throw domain_error("no form with that pole order exists in this weight");
  long R = ell + m;
  long work = order + R + std::labs(ell) + 4;

  QSeries ek = constant_series(1, work + 2 * R + 2);
  if (kp == 4 || kp == 8 || kp == 14) ek = ek * pow(eisenstein(4, work + 2 * R + 2), kp == 4 ? 1 : 2);
  if (kp == 6 || kp == 10 || kp == 14) ek = ek * eisenstein(6, work + 2 * R + 2);
  if (kp == 10) ek = ek * eisenstein(4, work + 2 * R + 2);
  QSeries delta = delta_series(work + 2 * R + 4);
  QSeries base = ek * pow(delta, ell);
  QSeries jser = classical_form(FormLabel{Family::j}, work + 2 * R + 2);

  // rows[e] = q^e + O(q^(ell+1)) for e = ell, ell-1, ..., -m
  std::map<long, QSeries> rows;
  QSeries g = base;
  for (long r = 0; r <= R; ++r) {
    if (r > 0) g = g * jser;
    long e = ell - r;
    QSeries h = g * (mpq_class(1) / g.coeff(e));
    for (long e2 = e + 1; e2 <= ell; ++e2) {
      mpq_class c = h.coeff(e2);
      if (c != 0) h -= rows.at(e2) * c;
    }
    rows.emplace(e, h);
  }
  QSeries out = rows.at(-m);
  if (out.order() < order)
    throw domain_error("internal order loss in wh_basis");
  out = out.truncated(order);
  out.set_weight(k);
  out.set_label("wh_basis(" + std::to_string(k) + "," + std::to_string(m) + ")");
  return out;
}

QSeries faber_basis(long m, long order) {
  if (m < 1) throw domain_error("faber_basis needs m >= 1");
  if (order < 1) throw domain_error("order too small to realize q^-m");
  QSeries f = wh_basis(0, m, order);
  f.set(0, mpq_class(24 * sigma(1, m)));
  f.set_label("faber(" + std::to_string(m) + ")");
  return f;
}

mpq_class pairing(const QSeries& f, const QSeries& g) {
  check_grid(f, g);
  long Mf = -std::min(0L, f.valuation()), Mg = -std::min(0L, g.valuation());
  if (f.order() <= Mg || g.order() <= Mf)
    throw domain_error("insufficient order to evaluate all cross terms");
  mpq_class s = 0;
  for (auto& [n, c] : f.coeffs()) {
    if (n > Mg) break;
    if (-n >= g.order()) continue;
    s += c * g.coeff(-n);
  }
  return s;
}

std::string QSeries::to_json() const {
  nlohmann::json j;
  j["denom"] = denom_;
  j["weight"] = weight_;
  j["order"] = order_;
  j["label"] = label_;
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [n, c] : coeffs_) arr.push_back({n, c.get_str()});
  j["coeffs"] = arr;
  return j.dump();
}

std::string QSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int count = 0;
  for (auto& [n, c] : coeffs_) {
    if (count++ >= max_terms) break;
    if (count > 1) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    os << mpq_class(abs(c)).get_str();
    if (n != 0) {
      os << "q^";
      if (denom_ == 1) os << n;
      else os << "(" << n << "/" << denom_ << ")";
    }
  }
  if (count == 0) os << "0";
  os << " + O(q^";
  if (denom_ == 1) os << order_;
  else os << "(" << order_ << "/" << denom_ << ")";
  os << ")";
  return os.str();
}

template <> double mpq_to<double>(const mpq_class& q) { return q.get_d(); }

template <> quad mpq_to<quad>(const mpq_class& q) {
  mpf_class x(q, 192);
  double d1 = x.get_d();
  x -= d1;
  double d2 = x.get_d();
  x -= d2;
  double d3 = x.get_d();
  return quad(d1) + quad(d2) + quad(d3);
}

template <class R> NumSeries<R>::NumSeries(const QSeries& s) : denom_(s.denom()) {
  nmin_ = std::min(0L, s.valuation());
  long ord = s.order();
  c_.assign(size_t(std::max(0L, ord - nmin_)), R(0));
  for (auto& [n, c] : s.coeffs()) c_[size_t(n - nmin_)] = mpq_to<R>(c);
}

template <class R> typename NumSeries<R>::C NumSeries<R>::eval_range(const C& tau, long lo, long hi) const {
  using std::exp;
  lo = std::max(lo, nmin_);
  hi = std::min(hi, order());
  if (lo >= hi) return C(0);
  C q = exp(C(0, 2 * pi_v<R>() / R(denom_)) * tau);
  C acc(0);
  for (long n = hi - 1; n >= lo; --n) acc = acc * q + C(c_[size_t(n - nmin_)]);
  // multiply by q^lo
  C ql = exp(C(0, 2 * pi_v<R>() * R(lo) / R(denom_)) * tau);
  return acc * ql;
}

template <class R> typename NumSeries<R>::C NumSeries<R>::eval(const C& tau) const {
  return eval_range(tau, nmin_, order());
}

template <class R> R NumSeries<R>::tail_bound(const C& tau) const {
  using std::abs;
  using std::exp;
  R aq = exp(-2 * pi_v<R>() * tau.imag() / R(denom_));
  long N = order();
  R last = 0;
  for (long n = std::max(nmin_, N - 3); n < N; ++n) {
    using std::pow;
    last = std::max(last, R(abs(coeff(n)) * pow(aq, R(n))));
  }
  return 4 * last;
}

template class NumSeries<double>;
template class NumSeries<quad>;

}  // namespace regpet
