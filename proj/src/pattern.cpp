#include "briefaudit/pattern.hpp"

#include <memory>
#include <optional>

#include "briefaudit/error.hpp"

namespace briefaudit {

namespace {

constexpr int kMaxRepeat = 255;
constexpr std::size_t kMaxStates = 50000;

struct Node {
  enum class Kind { Bytes, Concat, Alternate, Repeat } kind = Kind::Bytes;
  std::bitset<256> bytes;
  std::vector<std::unique_ptr<Node>> children;
  int min = 0;
  int max = 0;  // -1: unbounded
};

using NodePtr = std::unique_ptr<Node>;

std::bitset<256> fold_case(std::bitset<256> set) {
  for (int c = 'A'; c <= 'Z'; ++c) {
    if (set[static_cast<std::size_t>(c)] || set[static_cast<std::size_t>(c - 'A' + 'a')]) {
      set.set(static_cast<std::size_t>(c));
      set.set(static_cast<std::size_t>(c - 'A' + 'a'));
    }
  }
  return set;
}

std::bitset<256> single(unsigned char c) {
  std::bitset<256> set;
  set.set(c);
  return set;
}

std::bitset<256> digit_class() {
  std::bitset<256> set;
  for (int c = '0'; c <= '9'; ++c) set.set(static_cast<std::size_t>(c));
  return set;
}

std::bitset<256> word_class() {
  auto set = digit_class();
  for (int c = 'a'; c <= 'z'; ++c) set.set(static_cast<std::size_t>(c));
  for (int c = 'A'; c <= 'Z'; ++c) set.set(static_cast<std::size_t>(c));
  set.set('_');
  for (int c = 0x80; c < 0x100; ++c) set.set(static_cast<std::size_t>(c));
  return set;
}

std::bitset<256> space_class() {
  std::bitset<256> set;
  for (char c : std::string_view(" \t\n\r\f\v")) set.set(static_cast<unsigned char>(c));
  return set;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    auto node = alternation();
    if (pos_ != src_.size()) fail("unexpected ')'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::SchemaError, "pattern '" + std::string(src_) + "' at offset " +
                                            std::to_string(pos_) + ": " + why);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  NodePtr alternation() {
    auto first = concatenation();
    if (at_end() || peek() != '|') return first;
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Alternate;
    node->children.push_back(std::move(first));
    while (!at_end() && peek() == '|') {
      ++pos_;
      node->children.push_back(concatenation());
    }
    return node;
  }

  NodePtr concatenation() {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Concat;
    while (!at_end() && peek() != '|' && peek() != ')') {
      node->children.push_back(repetition());
    }
    return node;
  }

  NodePtr repetition() {
    auto node = atom();
    while (!at_end()) {
      int min = 0;
      int max = 0;
      const char c = peek();
      if (c == '*') {
        min = 0, max = -1, ++pos_;
      } else if (c == '+') {
        min = 1, max = -1, ++pos_;
      } else if (c == '?') {
        min = 0, max = 1, ++pos_;
      } else if (c == '{') {
        ++pos_;
        min = number();
        max = min;
        if (!at_end() && peek() == ',') {
          ++pos_;
          max = (!at_end() && peek() == '}') ? -1 : number();
        }
        if (at_end() || peek() != '}') fail("unterminated repetition");
        ++pos_;
        if (max != -1 && max < min) fail("repetition max below min");
      } else {
        break;
      }
      auto rep = std::make_unique<Node>();
      rep->kind = Node::Kind::Repeat;
      rep->min = min;
      rep->max = max;
      rep->children.push_back(std::move(node));
      node = std::move(rep);
    }
    return node;
  }

  int number() {
    int value = 0;
    std::size_t digits = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      ++pos_;
      if (++digits > 3 || value > kMaxRepeat) fail("repetition count above 255");
    }
    if (digits == 0) fail("expected repetition count");
    return value;
  }

  NodePtr bytes_node(std::bitset<256> set) {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Bytes;
    node->bytes = fold_case(set);
    return node;
  }

  NodePtr atom() {
    const char c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        if (!at_end() && peek() == '?') fail("lookaround and group flags are not supported");
        auto inner = alternation();
        if (at_end() || peek() != ')') fail("unbalanced '('");
        ++pos_;
        return inner;
      }
      case '[':
        return bytes_node(char_class());
      case '.': {
        ++pos_;
        std::bitset<256> all;
        all.set();
        all.reset('\n');
        return bytes_node(all);
      }
      case '\\':
        ++pos_;
        return bytes_node(escape(false));
      case '^':
      case '$':
        fail("anchors are not supported");
      case '*':
      case '+':
      case '?':
      case '{':
        fail("repetition without operand");
      case ']':
      case '}':
        fail(std::string("unescaped '") + c + "'");
      default:
        ++pos_;
        return bytes_node(single(static_cast<unsigned char>(c)));
    }
  }

  std::bitset<256> escape(bool in_class) {
    if (at_end()) fail("trailing backslash");
    const char c = src_[pos_++];
    switch (c) {
      case 'd': return digit_class();
      case 'w': return word_class();
      case 's': return space_class();
      case 'n': return single('\n');
      case 't': return single('\t');
      default:
        break;
    }
    if ((c >= '0' && c <= '9') && !in_class) fail("backreferences are not supported");
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      fail(std::string("unsupported escape \\") + c);
    }
    return single(static_cast<unsigned char>(c));
  }

  std::bitset<256> char_class() {
    ++pos_;  // '['
    bool negate = false;
    if (!at_end() && peek() == '^') {
      negate = true;
      ++pos_;
    }
    std::bitset<256> set;
    bool first = true;
    while (true) {
      if (at_end()) fail("unterminated character class");
      char c = peek();
      if (c == ']' && !first) {
        ++pos_;
        break;
      }
      first = false;
      std::bitset<256> item;
      unsigned char lo = 0;
      bool is_single = false;
      if (c == '\\') {
        ++pos_;
        item = escape(true);
        if (item.count() == 1) {
          for (int b = 0; b < 256; ++b) {
            if (item[static_cast<std::size_t>(b)]) lo = static_cast<unsigned char>(b);
          }
          is_single = true;
        }
      } else {
        ++pos_;
        lo = static_cast<unsigned char>(c);
        item = single(lo);
        is_single = true;
      }
      if (is_single && pos_ + 1 < src_.size() && peek() == '-' && src_[pos_ + 1] != ']') {
        ++pos_;
        unsigned char hi = static_cast<unsigned char>(peek());
        if (hi == '\\') {
          ++pos_;
          auto esc = escape(true);
          if (esc.count() != 1) fail("invalid class range");
          for (int b = 0; b < 256; ++b) {
            if (esc[static_cast<std::size_t>(b)]) hi = static_cast<unsigned char>(b);
          }
        } else {
          ++pos_;
        }
        if (hi < lo) fail("inverted class range");
        for (int b = lo; b <= hi; ++b) item.set(static_cast<std::size_t>(b));
      }
      set |= item;
    }
    set = fold_case(set);
    if (negate) set.flip();
    return set;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

class PatternCompiler {
 public:
  explicit PatternCompiler(Pattern& p) : p_(p) {}

  int add(Pattern::State state) {
    if (p_.states_.size() >= kMaxStates) {
      throw Error(ErrorCode::SchemaError, "pattern expands to too many states");
    }
    p_.states_.push_back(state);
    return static_cast<int>(p_.states_.size() - 1);
  }

  int split(int a, int b) {
    Pattern::State s;
    s.kind = Pattern::State::Kind::Split;
    s.out = a;
    s.out1 = b;
    return add(s);
  }

  // Continuation-passing construction: returns the entry state of `node`
  // whose exits lead to `next`.
  int build(const Node& node, int next) {
    switch (node.kind) {
      case Node::Kind::Bytes: {
        Pattern::State s;
        s.kind = Pattern::State::Kind::Byte;
        s.bytes = node.bytes;
        s.out = next;
        return add(s);
      }
      case Node::Kind::Concat: {
        int cur = next;
        for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
          cur = build(**it, cur);
        }
        return cur;
      }
      case Node::Kind::Alternate: {
        int cur = build(*node.children.back(), next);
        for (auto i = node.children.size() - 1; i-- > 0;) {
          cur = split(build(*node.children[i], next), cur);
        }
        return cur;
      }
      case Node::Kind::Repeat: {
        const Node& child = *node.children.front();
        int cur = next;
        if (node.max == -1) {
          const int loop = split(-1, next);
          p_.states_[static_cast<std::size_t>(loop)].out = build(child, loop);
          cur = loop;
        } else {
          for (int i = 0; i < node.max - node.min; ++i) cur = split(build(child, cur), next);
        }
        for (int i = 0; i < node.min; ++i) cur = build(child, cur);
        return cur;
      }
    }
    return next;
  }

 private:
  Pattern& p_;
};

Pattern Pattern::compile(std::string_view source) {
  if (source.empty()) throw Error(ErrorCode::SchemaError, "empty pattern");
  auto root = Parser(source).parse();
  Pattern p;
  PatternCompiler compiler(p);
  const int match = compiler.add(State{});
  p.start_ = compiler.build(*root, match);
  return p;
}

Pattern Pattern::literal(std::string_view text) {
  std::string escaped;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n') {
      space = true;
      continue;
    }
    if (space && !escaped.empty()) escaped.push_back(' ');
    space = false;
    if (std::string_view("\\.[](){}|*+?^$").find(c) != std::string_view::npos) escaped.push_back('\\');
    escaped.push_back(c);
  }
  if (escaped.empty()) throw Error(ErrorCode::SchemaError, "empty literal");
  return compile(escaped);
}

namespace {

struct Thread {
  int state;
  std::size_t start;
};

class ThreadList {
 public:
  explicit ThreadList(std::size_t states) : mark_(states, 0) {}

  void clear() {
    items_.clear();
    ++generation_;
  }
  bool claim(int state) {
    auto& m = mark_[static_cast<std::size_t>(state)];
    if (m == generation_) return false;
    m = generation_;
    return true;
  }
  std::vector<Thread>& items() { return items_; }

 private:
  std::vector<Thread> items_;
  std::vector<unsigned> mark_;
  unsigned generation_ = 1;
};

}  // namespace

std::vector<text::Span> Pattern::find_all(std::string_view lowered,
                                          const std::vector<bool>& word) const {
  std::vector<text::Span> matches;
  const std::size_t n = lowered.size();
  auto continuation = [&](std::size_t i) {
    return i < n && (static_cast<unsigned char>(lowered[i]) & 0xC0) == 0x80;
  };
  auto inside_word = [&](std::size_t i) { return i > 0 && i < n && word[i - 1] && word[i]; };
  auto edge_ok = [&](std::size_t i) { return !continuation(i) && !inside_word(i); };

  ThreadList current(states_.size());
  ThreadList next(states_.size());
  std::vector<int> stack;

  // Adds `state` and its epsilon closure. Lists stay ordered by start, so the
  // first claim on a state always carries the earliest start.
  auto add_thread = [&](ThreadList& list, int state, std::size_t start) {
    stack.clear();
    stack.push_back(state);
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      if (s < 0 || !list.claim(s)) continue;
      const auto& st = states_[static_cast<std::size_t>(s)];
      if (st.kind == State::Kind::Split) {
        stack.push_back(st.out1);
        stack.push_back(st.out);
      } else {
        list.items().push_back({s, start});
      }
    }
  };

  std::size_t pos = 0;
  while (pos < n) {
    current.clear();
    bool found = false;
    text::Span best;
    for (std::size_t i = pos;; ++i) {
      if (!found && i < n && edge_ok(i)) add_thread(current, start_, i);

      for (const auto& t : current.items()) {
        if (states_[static_cast<std::size_t>(t.state)].kind != State::Kind::Match) continue;
        if (t.start >= i || !edge_ok(i)) continue;
        if (!found || t.start < best.begin || (t.start == best.begin && i > best.end)) {
          best = {t.start, i};
          found = true;
        }
      }
      if (found) {
        auto& items = current.items();
        std::erase_if(items, [&](const Thread& t) { return t.start > best.begin; });
      }
      if (i >= n) break;
      if (found && current.items().empty()) break;

      next.clear();
      const auto byte = static_cast<unsigned char>(lowered[i]);
      for (const auto& t : current.items()) {
        const auto& st = states_[static_cast<std::size_t>(t.state)];
        if (st.kind == State::Kind::Byte && st.bytes[byte]) add_thread(next, st.out, t.start);
      }
      std::swap(current, next);
      if (found && current.items().empty()) break;
    }
    if (!found) break;
    matches.push_back(best);
    pos = best.end;
  }
  return matches;
}

}  // namespace briefaudit
