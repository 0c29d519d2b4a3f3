#include "pathlift/omega_sets.hpp"

#include "pathlift/errors.hpp"

#include <algorithm>

namespace pathlift::omega {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (auto& iv : intervals) {
    iv.left.canonicalize();
    iv.right.canonicalize();
    if (iv.left < 0 || iv.right > 1 || iv.left > iv.right) {
      throw DomainError("interval [" + to_string(iv.left) + ", " + to_string(iv.right) +
                        ") is not inside [0,1)");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.left < y.left; });
  for (const auto& iv : intervals) append_sorted(iv.left, iv.right);
}

IntervalSet IntervalSet::full() { return of(0, 1); }

IntervalSet IntervalSet::of(const Rational& left, const Rational& right) {
  return IntervalSet({Interval{left, right}});
}

void IntervalSet::append_sorted(const Rational& left, const Rational& right) {
  if (left >= right) return;
  if (!intervals_.empty() && left <= intervals_.back().right) {
    if (right > intervals_.back().right) intervals_.back().right = right;
    return;
  }
  intervals_.push_back(Interval{left, right});
}

Rational measure(const IntervalSet& a) {
  Rational total = 0;
  for (const auto& iv : a.intervals()) total += iv.right - iv.left;
  return total;
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  const auto& xs = a.intervals_;
  const auto& ys = b.intervals_;
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const Rational& lo = std::max(xs[i].left, ys[j].left);
    const Rational& hi = std::min(xs[i].right, ys[j].right);
    if (lo < hi) out.append_sorted(lo, hi);
    if (xs[i].right < ys[j].right) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  const auto& xs = a.intervals_;
  const auto& ys = b.intervals_;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].left <= ys[j].left)) {
      out.append_sorted(xs[i].left, xs[i].right);
      ++i;
    } else {
      out.append_sorted(ys[j].left, ys[j].right);
      ++j;
    }
  }
  return out;
}

IntervalSet unite_all(std::span<const IntervalSet> parts) {
  std::vector<const Interval*> all;
  for (const auto& p : parts) {
    for (const auto& iv : p.intervals_) all.push_back(&iv);
  }
  std::sort(all.begin(), all.end(),
            [](const Interval* x, const Interval* y) { return x->left < y->left; });
  IntervalSet out;
  for (const Interval* iv : all) out.append_sorted(iv->left, iv->right);
  return out;
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  const auto& ys = b.intervals_;
  std::size_t j = 0;
  for (const auto& x : a.intervals_) {
    Rational cursor = x.left;
    while (j < ys.size() && ys[j].right <= cursor) ++j;
    std::size_t k = j;
    while (k < ys.size() && ys[k].left < x.right) {
      if (ys[k].left > cursor) out.append_sorted(cursor, ys[k].left);
      if (ys[k].right > cursor) cursor = ys[k].right;
      if (cursor >= x.right) break;
      ++k;
    }
    if (cursor < x.right) out.append_sorted(cursor, x.right);
  }
  return out;
}

bool is_subset(const IntervalSet& a, const IntervalSet& b) { return difference(a, b).empty(); }

bool disjoint(const IntervalSet& a, const IntervalSet& b) { return intersect(a, b).empty(); }

IntervalSet prefix(const IntervalSet& a, const Rational& t) {
  if (t < 0) throw DomainError("prefix mass " + to_string(t) + " is negative");
  IntervalSet out;
  Rational remaining = t;
  for (const auto& iv : a.intervals_) {
    if (remaining == 0) break;
    const Rational length = iv.right - iv.left;
    if (length <= remaining) {
      out.intervals_.push_back(iv);
      remaining -= length;
    } else {
      out.intervals_.push_back(Interval{iv.left, iv.left + remaining});
      remaining = 0;
    }
  }
  if (remaining != 0) {
    throw DomainError("prefix mass " + to_string(t) + " exceeds set measure " +
                      to_string(measure(a)));
  }
  return out;
}

std::vector<IntervalSet> split(const IntervalSet& a, std::span<const Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw DomainError("split weight " + to_string(w) + " is negative");
    total += w;
  }
  const Rational available = measure(a);
  if (total != available) {
    throw DomainError("split weights sum to " + to_string(total) + " but the set has measure " +
                      to_string(available));
  }

  std::vector<IntervalSet> parts(weights.size());
  const auto& ivs = a.intervals_;
  std::size_t idx = 0;
  Rational cursor = ivs.empty() ? Rational(0) : ivs.front().left;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    Rational remaining = weights[k];
    while (remaining > 0) {
      const Rational room = ivs[idx].right - cursor;
      if (room <= remaining) {
        parts[k].append_sorted(cursor, ivs[idx].right);
        remaining -= room;
        if (++idx < ivs.size()) cursor = ivs[idx].left;
      } else {
        parts[k].append_sorted(cursor, cursor + remaining);
        cursor += remaining;
        remaining = 0;
      }
    }
  }
  return parts;
}

Rational inverse_prefix_mass(const IntervalSet& a, const IntervalSet& base, const Rational& gamma) {
  const Rational reachable = measure(intersect(a, base));
  if (gamma < 0 || gamma > reachable) {
    throw DomainError("target mass " + to_string(gamma) + " outside [0, " + to_string(reachable) +
                      "]");
  }
  const auto& xs = a.intervals();
  std::size_t i = 0;
  Rational consumed = 0;  // base mass to the left of the current base interval
  Rational gathered = 0;  // mass of a seen so far
  for (const auto& b : base.intervals()) {
    while (i < xs.size() && xs[i].right <= b.left) ++i;
    for (std::size_t k = i; k < xs.size() && xs[k].left < b.right; ++k) {
      const Rational lo = std::max(xs[k].left, b.left);
      const Rational hi = std::min(xs[k].right, b.right);
      if (lo >= hi) continue;
      if (gathered + (hi - lo) > gamma) return consumed + (lo - b.left) + (gamma - gathered);
      gathered += hi - lo;
    }
    consumed += b.right - b.left;
  }
  return consumed;
}

}  // namespace pathlift::omega
