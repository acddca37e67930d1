#include "surfcert/todd_coxeter.hpp"

#include <algorithm>
#include <limits>

namespace surfcert {

namespace {

constexpr std::uint32_t kUndef = std::numeric_limits<std::uint32_t>::max();

struct NoSpace {};

class Enumerator {
public:
  Enumerator(const Presentation& p, std::size_t cap)
      : cols_(2 * static_cast<std::size_t>(p.num_generators())), cap_(cap) {
    for (const auto& r : p.relators()) {
      std::vector<std::uint32_t> cols;
      for (const auto& l : r.letters()) {
        std::uint32_t c = 2 * l.gen + (l.exp < 0 ? 1 : 0);
        for (std::int64_t i = 0; i < (l.exp < 0 ? -l.exp : l.exp); ++i) cols.push_back(c);
      }
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
  }

  ToddCoxeterResult run() {
    ToddCoxeterResult res;
    if (cap_ == 0) return res;
    new_coset();

    std::size_t alpha = 0;
    while (alpha < n_) {
      if (!live(alpha)) {
        ++alpha;
        continue;
      }
      try {
        for (const auto& w : relators_) {
          scan_and_fill(static_cast<std::uint32_t>(alpha), w);
          if (!live(alpha)) break;
        }
        if (live(alpha))
          for (std::uint32_t x = 0; x < cols_; ++x)
            if (at(alpha, x) == kUndef) define(static_cast<std::uint32_t>(alpha), x);
        ++alpha;
      } catch (NoSpace) {
        lookahead();
        alpha = compact(alpha);
        if (n_ >= cap_) {
          res.total_defined = total_defined_;
          res.peak_live = peak_live_;
          return res;
        }
      }
    }

    compact(0);
    res.status = ToddCoxeterResult::Status::Complete;
    res.order = n_;
    res.total_defined = total_defined_;
    res.peak_live = peak_live_;
    res.table.num_cosets = n_;
    res.table.num_columns = cols_;
    res.table.entries.assign(table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(n_ * cols_));
    return res;
  }

private:
  std::size_t cols_;
  std::size_t cap_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> queue_;
  std::size_t n_ = 0;
  std::size_t n_live_ = 0;
  std::uint64_t total_defined_ = 0;
  std::uint64_t peak_live_ = 0;

  std::uint32_t& at(std::size_t c, std::size_t x) { return table_[c * cols_ + x]; }
  bool live(std::size_t c) const { return parent_[c] == c; }
  static std::uint32_t inv(std::uint32_t x) { return x ^ 1u; }

  std::uint32_t new_coset() {
    if (n_ >= cap_) throw NoSpace{};
    table_.resize((n_ + 1) * cols_, kUndef);
    parent_.push_back(static_cast<std::uint32_t>(n_));
    ++n_live_;
    ++total_defined_;
    peak_live_ = std::max<std::uint64_t>(peak_live_, n_live_);
    return static_cast<std::uint32_t>(n_++);
  }

  void define(std::uint32_t c, std::uint32_t x) {
    std::uint32_t b = new_coset();
    at(c, x) = b;
    at(b, inv(x)) = c;
  }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::uint32_t k, std::uint32_t l) {
    std::uint32_t a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --n_live_;
    queue_.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      std::uint32_t g = queue_[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        std::uint32_t d = at(g, x);
        if (d == kUndef) continue;
        at(d, inv(x)) = kUndef;
        std::uint32_t mu = rep(g), nu = rep(d);
        if (at(mu, x) != kUndef) {
          merge(nu, at(mu, x));
        } else if (at(nu, inv(x)) != kUndef) {
          merge(mu, at(nu, inv(x)));
        } else {
          at(mu, x) = nu;
          at(nu, inv(x)) = mu;
        }
      }
    }
  }

  // Traces w around coset a from both ends; fills the gap with new cosets
  // when `fill`, otherwise only records deductions and coincidences.
  void scan(std::uint32_t a, const std::vector<std::uint32_t>& w, bool fill) {
    std::size_t r = w.size();
    std::uint32_t f = a, b = a;
    std::size_t i = 0, j = r;  // unscanned letters are w[i..j)
    while (true) {
      while (i < r && at(f, w[i]) != kUndef) f = at(f, w[i++]);
      if (i >= r) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j > i && at(b, inv(w[j - 1])) != kUndef) b = at(b, inv(w[--j]));
      if (j <= i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, inv(w[i])) = f;
        return;
      }
      if (!fill) return;
      define(f, w[i]);
    }
  }

  void scan_and_fill(std::uint32_t a, const std::vector<std::uint32_t>& w) { scan(a, w, true); }

  void lookahead() {
    for (std::size_t c = 0; c < n_; ++c) {
      for (const auto& w : relators_) {
        if (!live(c)) break;
        scan(static_cast<std::uint32_t>(c), w, false);
      }
    }
  }

  // Renumbers live cosets in order; returns the new index of the first live
  // coset at or after `alpha`.
  std::size_t compact(std::size_t alpha) {
    std::vector<std::uint32_t> newid(n_, kUndef);
    std::size_t next = 0, new_alpha = kUndef;
    for (std::size_t c = 0; c < n_; ++c) {
      if (c == alpha) new_alpha = next;
      if (live(c)) newid[c] = static_cast<std::uint32_t>(next++);
    }
    if (new_alpha == kUndef) new_alpha = next;
    std::vector<std::uint32_t> fresh(next * cols_, kUndef);
    for (std::size_t c = 0; c < n_; ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < cols_; ++x) {
        std::uint32_t d = at(c, x);
        fresh[newid[c] * cols_ + x] = d == kUndef ? kUndef : newid[d];
      }
    }
    table_ = std::move(fresh);
    n_ = next;
    n_live_ = next;
    parent_.resize(n_);
    for (std::size_t c = 0; c < n_; ++c) parent_[c] = static_cast<std::uint32_t>(c);
    return new_alpha;
  }
};

}  // namespace

ToddCoxeterResult todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  if (max_cosets < 1) fail(ErrorCode::InvalidArgument, "todd_coxeter: max_cosets must be >= 1");
  return Enumerator(p, max_cosets).run();
}

}  // namespace surfcert
