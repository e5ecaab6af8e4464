#ifndef CROSSMOD_PRESENTATION_HPP
#define CROSSMOD_PRESENTATION_HPP

#include <deque>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossmod/finite_group.hpp"
#include "crossmod/word.hpp"

namespace crossmod {

/// A finite presentation <X | R> with named relators.
struct Presentation {
  AlphabetPtr alphabet;
  std::vector<Word> relators;
  std::vector<std::string> names;

  int relator_index(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
};

/// Grammar: `< gens | rel, rel, ... >` with `;` accepted in place of `|`
/// and an optional `name=` prefix on each relator.
inline Presentation parse_presentation(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw InputError("presentation: " + msg + " at position " + std::to_string(pos));
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size() || text[pos] != '<') fail("expected '<'");
  ++pos;

  std::vector<std::string> gen_names;
  for (;;) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected generator name");
    gen_names.emplace_back(text.substr(start, pos - start));
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  AlphabetPtr alphabet = make_alphabet(gen_names);

  skip_ws();
  if (pos == text.size() || (text[pos] != '|' && text[pos] != ';'))
    fail("expected '|' between generators and relators");
  ++pos;

  std::vector<Word> relators;
  std::vector<std::string> names;
  for (;;) {
    skip_ws();
    if (pos < text.size() && text[pos] == '>' && relators.empty()) break;
    std::size_t start = pos;
    int depth = 0;
    while (pos < text.size() && !((text[pos] == ',' || text[pos] == '>') && depth == 0)) ++pos;
    if (pos == text.size()) fail("expected '>'");
    std::string_view chunk = text.substr(start, pos - start);
    std::string name;
    if (auto eq = chunk.find('='); eq != std::string_view::npos) {
      std::size_t b = 0, e = eq;
      while (b < e && std::isspace(static_cast<unsigned char>(chunk[b]))) ++b;
      while (e > b && std::isspace(static_cast<unsigned char>(chunk[e - 1]))) --e;
      name = std::string(chunk.substr(b, e - b));
      chunk = chunk.substr(eq + 1);
    } else {
      name = "r" + std::to_string(relators.size() + 1);
    }
    Word w = [&] {
      try {
        return Word::parse(alphabet, chunk);
      } catch (const InputError& err) {
        throw InputError("presentation: relator " + std::to_string(relators.size() + 1) +
                         ": " + err.what());
      }
    }();
    if (w.empty()) fail("relator reduces to the empty word");
    relators.push_back(std::move(w));
    names.push_back(std::move(name));
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  skip_ws();
  if (pos == text.size() || text[pos] != '>') fail("expected '>'");
  ++pos;
  skip_ws();
  if (pos != text.size()) fail("trailing input");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw InputError("presentation: duplicate relator name '" + names[i] + "'");
  return Presentation{std::move(alphabet), std::move(relators), std::move(names)};
}

/// Evaluation map F -> Q fixed by generator images.
class WordMap {
 public:
  WordMap(GroupPtr group, std::vector<int> images)
      : group_(std::move(group)), images_(std::move(images)) {
    std::vector<int> gens;
    for (int im : images_) {
      if (im < 0 || im >= group_->order()) throw InputError("word map: image out of range");
      gens.push_back(im);
    }
    if (static_cast<int>(subgroup_closure(*group_, gens).size()) != group_->order())
      throw InputError("word map: images do not generate the group");
  }

  const GroupPtr& group() const { return group_; }
  int image(int gen) const { return images_.at(gen); }
  const std::vector<int>& images() const { return images_; }

  int eval(const Word& w) const {
    int r = FiniteGroup::identity();
    for (const Letter& l : w.letters()) {
      int g = images_[l.gen];
      r = group_->mul(r, l.sign > 0 ? g : group_->inv(g));
    }
    return r;
  }

 private:
  GroupPtr group_;
  std::vector<int> images_;
};

struct Enumerated {
  GroupPtr group;
  WordMap map;
};

namespace detail {

// HLT-style coset enumeration over the trivial subgroup: relator scanning
// with immediate deductions, queue-based coincidence handling, and a final
// breadth-first renumbering so tables are reproducible across runs.
class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, int max_cosets)
      : ngens_(p.alphabet->size()), ncols_(2 * ngens_), max_cosets_(max_cosets) {
    if (max_cosets_ <= 0) throw InputError("todd-coxeter: max_cosets must be positive");
    for (const Word& r : p.relators) {
      std::vector<int> cols;
      for (const Letter& l : r.letters()) cols.push_back(col(l.gen, l.sign));
      relators_.push_back(std::move(cols));
    }
    add_coset();
  }

  static int col(int gen, int sign) { return 2 * gen + (sign > 0 ? 0 : 1); }

  void run() {
    for (int c = 0; c < static_cast<int>(tab_.size()); ++c) {
      if (find(c) != c) continue;
      for (const auto& w : relators_) {
        scan_and_fill(c, w);
        if (find(c) != c) break;
      }
      if (find(c) != c) continue;
      for (int x = 0; x < ncols_; ++x)
        if (lookup(c, x) < 0) define(c, x);
    }
  }

  /// Live cosets renumbered by BFS discovery order from the identity coset.
  /// Returns the complete multiplication table group and generator images.
  Enumerated finish() const {
    int root = find_const(0);
    std::vector<int> number(tab_.size(), -1);
    std::vector<int> order;
    std::vector<std::vector<int>> repword;  // column path from the root
    number[root] = 0;
    order.push_back(root);
    repword.push_back({});
    for (std::size_t head = 0; head < order.size(); ++head) {
      int c = order[head];
      for (int x = 0; x < ncols_; ++x) {
        int d = tab_[c][x];
        if (d < 0) throw DomainError("todd-coxeter: internal: incomplete table");
        d = find_const(d);
        if (number[d] < 0) {
          number[d] = static_cast<int>(order.size());
          order.push_back(d);
          repword.push_back(repword[head]);
          repword.back().push_back(x);
        }
      }
    }
    const int n = static_cast<int>(order.size());
    // multiplication: a*b traces the representative word of b starting at a
    std::vector<int> mult(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int c = order[a];
        for (int x : repword[b]) c = find_const(tab_[c][x]);
        mult[std::size_t(a) * n + b] = number[c];
      }
    GroupPtr g = make_group(FiniteGroup(n, std::move(mult)));
    std::vector<int> images(ngens_);
    for (int x = 0; x < ngens_; ++x) images[x] = number[find_const(tab_[root][col(x, 1)])];
    return Enumerated{g, WordMap(g, images)};
  }

 private:
  int add_coset() {
    if (allocated_ >= max_cosets_)
      throw DomainError("todd-coxeter: coset limit exceeded (max_cosets=" +
                        std::to_string(max_cosets_) +
                        "); the group may be infinite or the limit too small");
    ++allocated_;
    tab_.emplace_back(ncols_, -1);
    rep_.push_back(static_cast<int>(tab_.size()) - 1);
    return rep_.back();
  }

  int find(int a) {
    while (rep_[a] != a) {
      rep_[a] = rep_[rep_[a]];
      a = rep_[a];
    }
    return a;
  }
  int find_const(int a) const {
    while (rep_[a] != a) a = rep_[a];
    return a;
  }

  int lookup(int c, int x) {
    int d = tab_[c][x];
    return d < 0 ? -1 : find(d);
  }

  int define(int c, int x) {
    int d = add_coset();
    tab_[c][x] = d;
    tab_[d][x ^ 1] = c;
    return d;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c, i = 0;
    int b = c, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && lookup(f, w[i]) >= 0) f = lookup(f, w[i]), ++i;
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && lookup(b, w[j] ^ 1) >= 0) b = lookup(b, w[j] ^ 1), --j;
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (j == i) {
        tab_[f][w[i]] = b;
        tab_[b][w[i] ^ 1] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void merge(int a, int b, std::deque<int>& q) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    q.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      int dead = q.front();
      q.pop_front();
      for (int x = 0; x < ncols_; ++x) {
        int d = tab_[dead][x];
        if (d < 0) continue;
        tab_[d][x ^ 1] = -1;
        int mu = find(dead), nu = find(d);
        if (tab_[mu][x] >= 0)
          merge(nu, tab_[mu][x], q);
        else if (tab_[nu][x ^ 1] >= 0)
          merge(mu, tab_[nu][x ^ 1], q);
        else {
          tab_[mu][x] = nu;
          tab_[nu][x ^ 1] = mu;
        }
      }
    }
  }

  int ngens_, ncols_, max_cosets_;
  int allocated_ = 0;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> tab_;
  std::vector<int> rep_;
};

}  // namespace detail

constexpr int kDefaultMaxCosets = 10000;

/// Enumerates the group presented by p.  Fails with DomainError when more
/// than max_cosets cosets are encountered.
inline Enumerated todd_coxeter(const Presentation& p, int max_cosets = kDefaultMaxCosets) {
  detail::CosetEnumerator e(p, max_cosets);
  e.run();
  Enumerated result = e.finish();
  for (const Word& r : p.relators)
    if (result.map.eval(r) != FiniteGroup::identity())
      throw DomainError("todd-coxeter: internal: relator does not evaluate to identity");
  return result;
}

struct CayleyEdge {
  int src, dst, gen;
  bool operator==(const CayleyEdge&) const = default;
};

/// Left-action Cayley graph: one edge y -> x*y per generator x and vertex y.
struct CayleyGraph {
  int vertices = 0;
  std::vector<CayleyEdge> edges;
};

inline CayleyGraph cayley_graph(const FiniteGroup& q, const WordMap& wm) {
  CayleyGraph g;
  g.vertices = q.order();
  for (int x = 0; x < static_cast<int>(wm.images().size()); ++x)
    for (int y = 0; y < q.order(); ++y)
      g.edges.push_back(CayleyEdge{y, q.mul(wm.image(x), y), x});
  return g;
}

/// Rank of the free fundamental group of a connected graph.
inline int graph_free_rank(const CayleyGraph& g) {
  return static_cast<int>(g.edges.size()) - g.vertices + 1;
}

}  // namespace crossmod

#endif
