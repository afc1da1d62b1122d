#include "tropicount/curve.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tropicount {

namespace {

std::string point_text(const RationalPoint& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }
std::string lattice_text(LatticePoint p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

std::string mark_text(std::size_t index, const Mark& m) {
  return "#" + std::to_string(index) + ":" + std::to_string(static_cast<int>(m.cls)) + ":" +
         std::to_string(static_cast<int>(m.mt));
}

class Canonizer {
 public:
  explicit Canonizer(const MarkedCurve& m) : c_(m.curve), inc_(c_.graph.incidence()) {
    const int n = c_.graph.vertex_count();
    RationalPoint base;
    bool have = false;
    for (int v : c_.finite_vertices())
      if (!have || c_.position(v) < base) base = c_.position(v), have = true;
    vertex_marks_.resize(static_cast<std::size_t>(n));
    edge_marks_.resize(c_.graph.edges.size());
    for (std::size_t i = 0; i < m.marks.size(); ++i) {
      GraphPoint p = normalize(c_, m.marks[i].point);
      if (p.is_vertex())
        vertex_marks_[static_cast<std::size_t>(p.vertex)].push_back(mark_text(i, m.marks[i]));
      else
        edge_marks_[static_cast<std::size_t>(p.edge)].push_back({p.offset, mark_text(i, m.marks[i])});
    }
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::string s = c_.graph.is_finite(v) ? "F" + point_text(c_.position(v) - base) : "I";
      auto vm = vertex_marks_[static_cast<std::size_t>(v)];
      std::sort(vm.begin(), vm.end());
      for (const auto& t : vm) s += t;
      labels[static_cast<std::size_t>(v)] = s;
    }
    vertex_labels_ = labels;
    initial_ = rank(labels);
  }

  std::string run() { return search(refine(initial_)); }

 private:
  // Description of edge e as seen from its endpoint v.
  std::string edge_from(int e, int v) const {
    const auto& ed = c_.graph.edges[static_cast<std::size_t>(e)];
    auto d = c_.outgoing_direction(e, v);
    std::string s = lattice_text(d.primitive) + "w" + std::to_string(d.weight) + "l" +
                    (ed.length.is_infinite() ? std::string("inf") : to_string(ed.length.value()));
    std::vector<std::string> marks;
    for (const auto& [t, text] : edge_marks_[static_cast<std::size_t>(e)]) {
      // Ends are measured from their finite vertex either way.
      Rational off = (ed.tail == v || ed.length.is_infinite()) ? t : Rational(ed.length.value() - t);
      marks.push_back(to_string(off) + text);
    }
    std::sort(marks.begin(), marks.end());
    for (const auto& t : marks) s += "[" + t + "]";
    return s;
  }

  static std::vector<int> rank(const std::vector<std::string>& labels) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out;
    for (const auto& l : labels)
      out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin()));
    return out;
  }

  static int classes(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  std::vector<int> refine(std::vector<int> colors) const {
    for (;;) {
      std::vector<std::string> labels(colors.size());
      for (std::size_t v = 0; v < colors.size(); ++v) {
        std::vector<std::string> nb;
        for (int e : inc_[v]) {
          int w = c_.other_end(e, static_cast<int>(v));
          nb.push_back(edge_from(e, static_cast<int>(v)) + "->" + std::to_string(colors[static_cast<std::size_t>(w)]));
        }
        std::sort(nb.begin(), nb.end());
        std::ostringstream s;
        s << std::to_string(colors[v]);
        for (const auto& t : nb) s << "|" << t;
        labels[v] = s.str();
      }
      auto next = rank(labels);
      if (classes(next) == classes(colors)) return next;
      colors = std::move(next);
    }
  }

  std::string serialize(const std::vector<int>& colors) const {
    std::vector<int> order(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v) order[static_cast<std::size_t>(colors[v])] = static_cast<int>(v);
    std::ostringstream out;
    for (int v : order) out << "V" << vertex_labels_[static_cast<std::size_t>(v)] << ";";
    std::vector<std::string> edges;
    for (int e = 0; e < c_.graph.edge_count(); ++e) {
      const auto& ed = c_.graph.edges[static_cast<std::size_t>(e)];
      int a = ed.tail, b = ed.head;
      if (colors[static_cast<std::size_t>(b)] < colors[static_cast<std::size_t>(a)]) std::swap(a, b);
      edges.push_back("E" + std::to_string(colors[static_cast<std::size_t>(a)]) + "-" +
                      std::to_string(colors[static_cast<std::size_t>(b)]) + ":" + edge_from(e, a));
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) out << e << ";";
    return out.str();
  }

  std::string search(const std::vector<int>& colors) const {
    const int k = classes(colors);
    if (k == static_cast<int>(colors.size())) return serialize(colors);
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (int col : colors) ++count[static_cast<std::size_t>(col)];
    int target = static_cast<int>(std::find_if(count.begin(), count.end(), [](int x) { return x > 1; }) - count.begin());
    std::string best;
    for (std::size_t v = 0; v < colors.size(); ++v) {
      if (colors[v] != target) continue;
      std::vector<int> split = colors;
      for (auto& col : split) col *= 2;
      split[v] += 1;
      auto candidate = search(refine(rank_ints(split)));
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
    return best;
  }

  static std::vector<int> rank_ints(const std::vector<int>& values) {
    std::vector<int> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out;
    for (int x : values) out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
    return out;
  }

  const PPTCurve& c_;
  std::vector<std::vector<int>> inc_;
  std::vector<std::vector<std::string>> vertex_marks_;
  std::vector<std::vector<std::pair<Rational, std::string>>> edge_marks_;
  std::vector<std::string> vertex_labels_;
  std::vector<int> initial_;
};

}  // namespace

std::string canonical_form(const MarkedCurve& m) {
  check_structure(m.curve);
  return Canonizer(m).run();
}

bool isomorphic(const MarkedCurve& a, const MarkedCurve& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace tropicount
