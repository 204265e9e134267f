#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace ordgraph {

// Eventually periodic sequence prefix . cycle^infinity.
// Canonical form: primitive cycle, and the prefix does not end with the cycle's last entry.
template <class T>
struct EPSeq {
  std::vector<T> prefix;
  std::vector<T> cycle;

  EPSeq() = default;
  EPSeq(std::vector<T> p, std::vector<T> c) : prefix(std::move(p)), cycle(std::move(c)) {
    if (cycle.empty()) throw std::invalid_argument("eventually periodic sequence needs a nonempty cycle");
    canonicalize();
  }

  void canonicalize() {
    std::size_t n = cycle.size();
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - d];
      if (periodic) {
        cycle.resize(d);
        break;
      }
    }
    while (!prefix.empty() && prefix.back() == cycle.back()) {
      prefix.pop_back();
      std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
  }

  const T& at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  const T& at(const mpz_class& i) const {
    if (i < static_cast<unsigned long>(prefix.size())) return prefix[i.get_ui()];
    mpz_class r = (i - static_cast<unsigned long>(prefix.size())) % static_cast<unsigned long>(cycle.size());
    return cycle[r.get_ui()];
  }

  std::size_t window() const { return prefix.size() + cycle.size(); }

  std::vector<T> take(std::size_t n) const {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }

  EPSeq drop(std::size_t n) const {
    EPSeq r;
    if (n <= prefix.size()) {
      r.prefix.assign(prefix.begin() + static_cast<long>(n), prefix.end());
      r.cycle = cycle;
    } else {
      std::size_t m = (n - prefix.size()) % cycle.size();
      r.cycle = cycle;
      std::rotate(r.cycle.begin(), r.cycle.begin() + static_cast<long>(m), r.cycle.end());
    }
    return r;
  }

  EPSeq drop(const mpz_class& n) const {
    if (n <= static_cast<unsigned long>(prefix.size())) return drop(static_cast<std::size_t>(n.get_ui()));
    mpz_class m = (n - static_cast<unsigned long>(prefix.size())) % static_cast<unsigned long>(cycle.size());
    return drop(prefix.size() + m.get_ui());
  }

  EPSeq cons(const T& x) const {
    EPSeq r = *this;
    r.prefix.insert(r.prefix.begin(), x);
    r.canonicalize();
    return r;
  }

  EPSeq replace_head(const T& x) const {
    EPSeq r = *this;
    if (!r.prefix.empty()) {
      r.prefix[0] = x;
    } else {
      std::rotate(r.cycle.begin(), r.cycle.begin() + 1, r.cycle.end());
      r.prefix.push_back(x);
    }
    r.canonicalize();
    return r;
  }

  friend bool operator==(const EPSeq& a, const EPSeq& b) { return a.prefix == b.prefix && a.cycle == b.cycle; }
  friend bool operator<(const EPSeq& a, const EPSeq& b) {
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.cycle < b.cycle;
  }
};

}  // namespace ordgraph
