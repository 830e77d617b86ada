#include "limitlab/hypcode.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace limitlab {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_set(const FiniteSet& s) {
  std::size_t h = 0x5e75;
  for (Nat x : s) h = mix(h, std::hash<Nat>{}(x));
  return h;
}

}  // namespace

HypCode HypCode::make(Node n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case CodeKind::Base:
      h = mix(h, std::hash<std::string>{}(n.family));
      h = mix(h, std::hash<Nat>{}(n.index));
      break;
    case CodeKind::Fin:
      h = mix(h, hash_set(n.set));
      break;
    case CodeKind::Tail:
      h = mix(h, std::hash<Nat>{}(n.t));
      break;
    case CodeKind::Stride:
      h = mix(h, std::hash<Nat>{}(n.a));
      h = mix(h, std::hash<Nat>{}(n.r));
      h = mix(h, std::hash<Nat>{}(n.t));
      break;
    case CodeKind::Union:
      h = mix(h, n.left->hash);
      h = mix(h, n.right->hash);
      break;
    case CodeKind::Diff:
      h = mix(h, n.left->hash);
      h = mix(h, hash_set(n.set));
      break;
    case CodeKind::Above:
    case CodeKind::Pad:
      h = mix(h, n.left->hash);
      h = mix(h, std::hash<Nat>{}(n.t));
      break;
    case CodeKind::Opaque:
      h = mix(h, std::hash<std::string>{}(n.key.construction));
      h = mix(h, std::hash<std::string>{}(n.key.params));
      break;
  }
  n.hash = h;
  return HypCode(std::make_shared<const Node>(std::move(n)));
}

HypCode HypCode::base(const std::string& family, Nat i) {
  Node n;
  n.kind = CodeKind::Base;
  n.family = family;
  n.index = i;
  return make(std::move(n));
}

HypCode HypCode::fin(FiniteSet d) {
  Node n;
  n.kind = CodeKind::Fin;
  n.set = std::move(d);
  return make(std::move(n));
}

HypCode HypCode::tail(Nat t) {
  Node n;
  n.kind = CodeKind::Tail;
  n.t = t;
  return make(std::move(n));
}

HypCode HypCode::stride(Nat a, Nat r, Nat t) {
  if (a < 1 || r >= a) throw Error("stride: requires a >= 1 and r < a");
  Node n;
  n.kind = CodeKind::Stride;
  n.a = a;
  n.r = r;
  n.t = t;
  return make(std::move(n));
}

HypCode HypCode::union_of(HypCode l, HypCode r) {
  if (!l.valid() || !r.valid()) throw Error("union_of: invalid child");
  Node n;
  n.kind = CodeKind::Union;
  n.left = l.node_;
  n.right = r.node_;
  return make(std::move(n));
}

HypCode HypCode::diff(HypCode c, FiniteSet d) {
  if (!c.valid()) throw Error("diff: invalid child");
  Node n;
  n.kind = CodeKind::Diff;
  n.left = c.node_;
  n.set = std::move(d);
  return make(std::move(n));
}

HypCode HypCode::above(HypCode c, Nat t) {
  if (!c.valid()) throw Error("above: invalid child");
  Node n;
  n.kind = CodeKind::Above;
  n.left = c.node_;
  n.t = t;
  return make(std::move(n));
}

HypCode HypCode::opaque(OpaqueKey key) {
  Node n;
  n.kind = CodeKind::Opaque;
  n.key = std::move(key);
  return make(std::move(n));
}

HypCode pad(HypCode c, Nat d) {
  if (!c.valid()) throw Error("pad: invalid child");
  HypCode::Node n;
  n.kind = CodeKind::Pad;
  if (c.kind() == CodeKind::Pad) {
    // Collapse: tag space is split by parity so that plain tags (2d) and
    // collapsed tags (2<t,d>+1) never collide; the map stays one-one.
    n.left = c.node().left;
    n.t = 2 * cantor_pair(c.node().t, d) + 1;
  } else {
    n.left = c.node_;
    n.t = 2 * d;
  }
  return HypCode::make(std::move(n));
}

HypCode HypCode::pad_base() const {
  if (!valid() || kind() != CodeKind::Pad) return *this;
  return HypCode(node_->left);
}

HypCode HypCode::pad_with_raw_tag(HypCode base, Nat raw_tag) {
  if (!base.valid() || base.kind() == CodeKind::Pad)
    throw Error("pad_with_raw_tag: base must be a non-pad code");
  Node n;
  n.kind = CodeKind::Pad;
  n.left = base.node_;
  n.t = raw_tag;
  return make(std::move(n));
}

bool HypCode::operator==(const HypCode& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case CodeKind::Base:
      return a.family == b.family && a.index == b.index;
    case CodeKind::Fin:
      return a.set == b.set;
    case CodeKind::Tail:
      return a.t == b.t;
    case CodeKind::Stride:
      return a.a == b.a && a.r == b.r && a.t == b.t;
    case CodeKind::Union:
      return HypCode(a.left) == HypCode(b.left) && HypCode(a.right) == HypCode(b.right);
    case CodeKind::Diff:
      return a.set == b.set && HypCode(a.left) == HypCode(b.left);
    case CodeKind::Above:
    case CodeKind::Pad:
      return a.t == b.t && HypCode(a.left) == HypCode(b.left);
    case CodeKind::Opaque:
      return a.key == b.key;
  }
  return false;
}

bool HypCode::operator<(const HypCode& o) const {
  if (node_ == o.node_) return false;
  if (!node_) return o.node_ != nullptr;
  if (!o.node_) return false;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case CodeKind::Base:
      if (a.family != b.family) return a.family < b.family;
      return a.index < b.index;
    case CodeKind::Fin:
      return a.set < b.set;
    case CodeKind::Tail:
      return a.t < b.t;
    case CodeKind::Stride:
      if (a.a != b.a) return a.a < b.a;
      if (a.r != b.r) return a.r < b.r;
      return a.t < b.t;
    case CodeKind::Union: {
      HypCode al(a.left), bl(b.left);
      if (al != bl) return al < bl;
      return HypCode(a.right) < HypCode(b.right);
    }
    case CodeKind::Diff: {
      HypCode al(a.left), bl(b.left);
      if (al != bl) return al < bl;
      return a.set < b.set;
    }
    case CodeKind::Above:
    case CodeKind::Pad: {
      if (a.t != b.t) return a.t < b.t;
      return HypCode(a.left) < HypCode(b.left);
    }
    case CodeKind::Opaque:
      return a.key < b.key;
  }
  return false;
}

// -- s-expression io ---------------------------------------------------------

namespace {

void print_code(std::ostream& os, const HypCode& c);

void print_fin_body(std::ostream& os, const FiniteSet& s) {
  os << "(fin";
  for (Nat x : s) os << ' ' << x;
  os << ')';
}

std::string escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') r += '\\';
    r += ch;
  }
  return r;
}

void print_code(std::ostream& os, const HypCode& c) {
  const auto& n = c.node();
  switch (n.kind) {
    case CodeKind::Base:
      os << "(base " << n.family << ' ' << n.index << ')';
      break;
    case CodeKind::Fin:
      print_fin_body(os, n.set);
      break;
    case CodeKind::Tail:
      os << "(tail " << n.t << ')';
      break;
    case CodeKind::Stride:
      os << "(stride " << n.a << ' ' << n.r << ' ' << n.t << ')';
      break;
    case CodeKind::Union:
      os << "(union ";
      print_code(os, c.left());
      os << ' ';
      print_code(os, c.right());
      os << ')';
      break;
    case CodeKind::Diff:
      os << "(diff ";
      print_code(os, c.left());
      os << ' ';
      print_fin_body(os, n.set);
      os << ')';
      break;
    case CodeKind::Above:
      os << "(above ";
      print_code(os, c.left());
      os << ' ' << n.t << ')';
      break;
    case CodeKind::Pad:
      os << "(pad ";
      print_code(os, c.left());
      os << ' ' << n.t << ')';
      break;
    case CodeKind::Opaque:
      os << "(opaque " << n.key.construction << " \"" << escape(n.key.params) << "\")";
      break;
  }
}

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= s.size()) throw Error("hypcode parse: unexpected end of input");
    return s[pos];
  }
  void expect(char c) {
    if (peek() != c) throw Error(std::string("hypcode parse: expected '") + c + "'");
    ++pos;
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    if (start == pos) throw Error("hypcode parse: expected token");
    return s.substr(start, pos - start);
  }
  Nat number() {
    std::string t = token();
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("hypcode parse: expected number, got '" + t + "'");
    return std::stoull(t);
  }
  std::string quoted() {
    expect('"');
    std::string r;
    while (pos < s.size() && s[pos] != '"') {
      if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
      r += s[pos++];
    }
    if (pos >= s.size()) throw Error("hypcode parse: unterminated string");
    ++pos;
    return r;
  }
  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }

  FiniteSet fin_set() {
    expect('(');
    std::string head = token();
    if (head != "fin") throw Error("hypcode parse: expected (fin ...)");
    std::vector<Nat> xs;
    while (peek() != ')') xs.push_back(number());
    expect(')');
    return FiniteSet(std::move(xs));
  }

  HypCode code() {
    expect('(');
    std::string head = token();
    if (head == "fin") {
      std::vector<Nat> xs;
      while (peek() != ')') xs.push_back(number());
      expect(')');
      return HypCode::fin(FiniteSet(std::move(xs)));
    }
    if (head == "tail") {
      Nat t = number();
      expect(')');
      return HypCode::tail(t);
    }
    if (head == "stride") {
      Nat a = number(), r = number(), t = number();
      expect(')');
      return HypCode::stride(a, r, t);
    }
    if (head == "base") {
      std::string fam = token();
      Nat i = number();
      expect(')');
      return HypCode::base(fam, i);
    }
    if (head == "union") {
      HypCode l = code(), r = code();
      expect(')');
      return HypCode::union_of(l, r);
    }
    if (head == "diff") {
      HypCode l = code();
      FiniteSet d = fin_set();
      expect(')');
      return HypCode::diff(l, std::move(d));
    }
    if (head == "above") {
      HypCode l = code();
      Nat t = number();
      expect(')');
      return HypCode::above(l, t);
    }
    if (head == "pad") {
      HypCode l = code();
      Nat t = number();
      expect(')');
      // Tags are stored verbatim so round-trips are exact.
      return HypCode::pad_with_raw_tag(l, t);
    }
    if (head == "opaque") {
      OpaqueKey k;
      k.construction = token();
      k.params = quoted();
      expect(')');
      return HypCode::opaque(std::move(k));
    }
    throw Error("hypcode parse: unknown head '" + head + "'");
  }
};

}  // namespace

std::string HypCode::to_string() const {
  if (!valid()) return "(invalid)";
  std::ostringstream os;
  print_code(os, *this);
  return os.str();
}

HypCode HypCode::parse(const std::string& s) {
  Parser p{s};
  HypCode c = p.code();
  p.skip_ws();
  if (p.pos != s.size()) throw Error("hypcode parse: trailing input");
  return c;
}

}  // namespace limitlab
