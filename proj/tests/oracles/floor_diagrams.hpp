#pragma once

// Plane curve counts from marked floor diagrams. Shares nothing with the lattice path
// enumeration, so agreement between the two is a real cross-check.
//
// Labels 1..3d-1+g are handed out in increasing order; each becomes a floor, a sink below
// an earlier floor, or the midpoint of an edge leaving an earlier floor (its upper floor
// is chosen when that floor appears). A floor ends with out - in + sinks = 1.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace tropicount::oracle {

struct FloorCounts {
  std::int64_t complex = 0;
  // Only diagrams with odd edge weights survive with all configuration points real.
  std::int64_t real = 0;
};

namespace detail {

class FloorSearch {
 public:
  FloorSearch(int d, int g) : d_(d), edges_(d - 1 + g), labels_(3 * d - 1 + g) {}

  FloorCounts run() {
    step(0, 0, 0, 1, true);
    return out_;
  }

 private:
  struct Floor {
    std::int64_t in = 0, out = 0, sinks = 0;
  };
  struct Open {
    int from;
    std::int64_t weight;
  };

  void step(int label, int mids, int sinks, std::int64_t mult, bool odd) {
    if (label == labels_) {
      finish(mult, odd);
      return;
    }
    if (static_cast<int>(floors_.size()) < d_) {
      const std::size_t k = open_.size();
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        Floor f;
        std::vector<Open> keep;
        const int id = static_cast<int>(floors_.size());
        std::size_t closed = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (mask >> j & 1u) {
            f.in += open_[j].weight;
            links_.push_back({open_[j].from, id});
            ++closed;
          } else {
            keep.push_back(open_[j]);
          }
        }
        floors_.push_back(f);
        std::swap(open_, keep);
        step(label + 1, mids, sinks, mult, odd);
        std::swap(open_, keep);
        floors_.pop_back();
        links_.resize(links_.size() - closed);
      }
    }
    for (std::size_t i = 0; i < floors_.size(); ++i) {
      Floor& f = floors_[i];
      const std::int64_t room = f.in + 1 - f.out - f.sinks;
      if (sinks < d_ && room >= 1) {
        ++f.sinks;
        step(label + 1, mids, sinks + 1, mult, odd);
        --f.sinks;
      }
      if (mids < edges_) {
        for (std::int64_t w = 1; w <= room; ++w) {
          f.out += w;
          open_.push_back({static_cast<int>(i), w});
          step(label + 1, mids + 1, sinks, mult * w * w, odd && w % 2 == 1);
          open_.pop_back();
          f.out -= w;
        }
      }
    }
  }

  void finish(std::int64_t mult, bool odd) {
    if (!open_.empty() || static_cast<int>(floors_.size()) != d_) return;
    for (const auto& f : floors_)
      if (f.out - f.in + f.sinks != 1) return;
    std::vector<int> parent(static_cast<std::size_t>(d_));
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (auto [a, b] : links_) parent[static_cast<std::size_t>(root(a))] = root(b);
    for (int x = 1; x < d_; ++x)
      if (root(x) != root(0)) return;
    out_.complex += mult;
    if (odd) ++out_.real;
  }

  int d_, edges_, labels_;
  std::vector<Floor> floors_;
  std::vector<Open> open_;
  std::vector<std::pair<int, int>> links_;
  FloorCounts out_;
};

}  // namespace detail

inline FloorCounts floor_diagram_counts(int degree, int genus) { return detail::FloorSearch(degree, genus).run(); }

}  // namespace tropicount::oracle
