#include "braidcomp/braid_core.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace braidcomp {

namespace {

void require_b3(const BraidWord& w, const char* what) {
  if (w.strands() != 3) throw std::invalid_argument(std::string(what) + " requires B_3");
}

// Streaming B_3 form. The current value is Delta^k * tau^parity(raw), so an
// appended letter c enters raw as tau^parity(c) and a Delta only flips parity.
class B3Builder {
 public:
  void push_positive(int c) {
    int r = parity_ ? 3 - c : c;
    std::size_t m = raw_.size();
    if (m >= 2 && raw_[m - 2] == r && raw_[m - 1] != r) {
      raw_.resize(m - 2);
      shift(1);
      return;
    }
    raw_.push_back(r);
  }
  void shift(int d) {
    k_ += d;
    if (d & 1) parity_ ^= 1;
  }
  void push(int g) {
    if (g > 0) {
      push_positive(g);
    } else {
      // sigma_a^{-1} = Delta^{-1} sigma_a sigma_{3-a}
      shift(-1);
      push_positive(-g);
      push_positive(3 + g);
    }
  }
  GarsideForm result() const {
    GarsideForm f;
    f.strands = 3;
    f.infimum = k_;
    f.remainder.reserve(raw_.size());
    for (int r : raw_) f.remainder.push_back(parity_ ? 3 - r : r);
    return f;
  }

 private:
  std::int64_t k_ = 0;
  int parity_ = 0;
  std::vector<int> raw_;
};

Permutation identity_perm(int n) {
  Permutation p(n);
  for (int j = 0; j < n; ++j) p[j] = j;
  return p;
}

Permutation delta_perm(int n) {
  Permutation p(n);
  for (int j = 0; j < n; ++j) p[j] = n - 1 - j;
  return p;
}

Permutation conj_delta(const Permutation& p) {
  int n = static_cast<int>(p.size());
  Permutation out(n);
  for (int j = 0; j < n; ++j) out[j] = n - 1 - p[n - 1 - j];
  return out;
}

Permutation inverse_perm(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) inv[p[j]] = static_cast<int>(j);
  return inv;
}

// Pushes crossings from b into a until S(b) is contained in F(a).
bool left_weight(Permutation& a, Permutation& b) {
  int n = static_cast<int>(a.size());
  bool changed = false;
  for (;;) {
    Permutation ainv = inverse_perm(a);
    int pick = -1;
    for (int i = 0; i + 1 < n; ++i) {
      bool starts_b = b[i] > b[i + 1];
      bool finishes_a = ainv[i] > ainv[i + 1];
      if (starts_b && !finishes_a) {
        pick = i;
        break;
      }
    }
    if (pick < 0) return changed;
    for (int& v : a) {
      if (v == pick) v = pick + 1;
      else if (v == pick + 1) v = pick;
    }
    std::swap(b[pick], b[pick + 1]);
    changed = true;
  }
}

}  // namespace

int tau_letter(int letter) {
  if (letter == 0 || std::abs(letter) > 2) throw std::invalid_argument("tau acts on B_3 letters");
  return letter > 0 ? 3 - letter : -(3 + letter);
}

BraidWord fundamental(int n) {
  if (n < 2) throw std::invalid_argument("fundamental braid needs n >= 2");
  std::vector<int> out;
  out.reserve(n * (n - 1) / 2);
  for (int lo = 1; lo <= n - 1; ++lo) {
    for (int g = n - 1; g >= lo; --g) out.push_back(g);
  }
  return BraidWord(n, std::move(out));
}

BraidWord tau(const BraidWord& w) {
  require_b3(w, "tau");
  std::vector<int> out;
  out.reserve(w.size());
  for (int g : w.letters()) out.push_back(tau_letter(g));
  return BraidWord(3, std::move(out));
}

GarsideForm normal_form_b3(const BraidWord& w) {
  require_b3(w, "normal_form_b3");
  B3Builder b;
  for (int g : w.letters()) b.push(g);
  return b.result();
}

GarsideForm normal_form_bn(const BraidWord& w) {
  const int n = w.strands();
  // Factors are stored untwisted: actual factor = tau^parity(raw).
  std::vector<Permutation> raw;
  std::int64_t k = 0;
  int parity = 0;
  auto append = [&](Permutation p) { raw.push_back(parity ? conj_delta(p) : std::move(p)); };
  for (int g : w.letters()) {
    int i = std::abs(g) - 1;
    Permutation s = identity_perm(n);
    std::swap(s[i], s[i + 1]);
    if (g > 0) {
      append(std::move(s));
    } else {
      --k;
      parity ^= 1;
      Permutation d = delta_perm(n);
      Permutation x(n);
      for (int j = 0; j < n; ++j) x[j] = s[d[j]];
      append(std::move(x));
    }
  }
  std::vector<Permutation> factors;
  factors.reserve(raw.size());
  for (auto& p : raw) factors.push_back(parity ? conj_delta(p) : std::move(p));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < factors.size(); ++j) {
      if (left_weight(factors[j], factors[j + 1])) changed = true;
    }
  }
  const Permutation id = identity_perm(n);
  const Permutation delta = delta_perm(n);
  std::size_t lead = 0;
  while (lead < factors.size() && factors[lead] == delta) ++lead;
  std::size_t end = factors.size();
  while (end > lead && factors[end - 1] == id) --end;

  GarsideForm f;
  f.strands = n;
  f.infimum = k + static_cast<std::int64_t>(lead);
  for (std::size_t j = lead; j < end; ++j) {
    auto word = permutation_word(factors[j]);
    f.remainder.insert(f.remainder.end(), word.begin(), word.end());
    f.factors.push_back(std::move(factors[j]));
  }
  return f;
}

std::vector<int> permutation_word(const Permutation& p) {
  Permutation q = p;
  std::vector<int> out;
  for (;;) {
    int i = 0;
    int n = static_cast<int>(q.size());
    while (i + 1 < n && q[i] < q[i + 1]) ++i;
    if (i + 1 >= n) return out;
    out.push_back(i + 1);
    std::swap(q[i], q[i + 1]);
  }
}

bool equal_b3(const BraidWord& u, const BraidWord& v) {
  return normal_form_b3(u) == normal_form_b3(v);
}

bool equal_bn(const BraidWord& u, const BraidWord& v) {
  if (u.strands() != v.strands()) throw std::invalid_argument("strand count mismatch");
  return normal_form_bn(u) == normal_form_bn(v);
}

bool is_trivial(const BraidWord& w) {
  GarsideForm f = w.strands() == 3 ? normal_form_b3(w) : normal_form_bn(w);
  return f.infimum == 0 && f.remainder.empty();
}

BraidWord to_word(const GarsideForm& form) {
  BraidWord out = fundamental(form.strands).power(static_cast<int>(form.infimum));
  return out * BraidWord(form.strands, form.remainder);
}

std::string format_garside(const GarsideForm& form) {
  std::ostringstream os;
  os << "D^" << form.infimum << " | ";
  if (form.factors.empty()) {
    os << format_letters(form.remainder);
    return os.str();
  }
  for (std::size_t j = 0; j < form.factors.size(); ++j) {
    if (j) os << " . ";
    os << format_letters(permutation_word(form.factors[j]));
  }
  return os.str();
}

}  // namespace braidcomp
