#ifndef LIMITLAB_HYPCODE_HPP
#define LIMITLAB_HYPCODE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/finite_set.hpp"
#include "limitlab/nat.hpp"

namespace limitlab {

/// Key of a bespoke staged enumerator. Identity is (construction, params);
/// the registry binds each key to one enumerator, permanently.
struct OpaqueKey {
  std::string construction;  // symbolic tag, e.g. "bcsw"
  std::string params;        // canonical serialization of the arguments

  bool operator==(const OpaqueKey& o) const {
    return construction == o.construction && params == o.params;
  }
  bool operator<(const OpaqueKey& o) const {
    if (construction != o.construction) return construction < o.construction;
    return params < o.params;
  }
};

enum class CodeKind : std::uint8_t {
  Base,    // family member L_i
  Fin,     // explicit finite set
  Tail,    // {x : x >= t}
  Stride,  // {x >= t : x = r (mod a)}
  Union,
  Diff,    // child minus finite set
  Above,   // child intersected with {x : x > t}
  Pad,     // extension-transparent identity tag
  Opaque,  // registered staged enumerator
};

/// Structural code for an r.e.-set hypothesis. Immutable; identity is
/// structural equality after normalization. Normalization canonicalizes
/// finite sets and collapses nested Pad tags injectively; it never rewrites
/// across Opaque nodes and never rewrites extensionally.
class HypCode {
 public:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  struct Node {
    CodeKind kind;
    // Base
    std::string family;
    Nat index = 0;
    // Fin / Diff second operand
    FiniteSet set;
    // Tail / Stride / Above / Pad numeric parameters
    Nat a = 0;  // stride modulus
    Nat r = 0;  // stride residue
    Nat t = 0;  // tail/above threshold, pad tag
    // children
    Ptr left, right;
    // Opaque
    OpaqueKey key;

    std::size_t hash = 0;  // cached structural hash
  };

  HypCode() = default;  // empty handle; only valid codes compare/print

  bool valid() const { return node_ != nullptr; }
  const Node& node() const { return *node_; }
  CodeKind kind() const { return node_->kind; }
  HypCode left() const { return HypCode(node_->left); }
  HypCode right() const { return HypCode(node_->right); }

  bool operator==(const HypCode& o) const;
  bool operator!=(const HypCode& o) const { return !(*this == o); }
  /// Total order (for map keys); consistent with equality.
  bool operator<(const HypCode& o) const;

  std::size_t hash() const { return node_ ? node_->hash : 0; }

  /// Canonical s-expression, e.g. "(union (fin 1 3) (tail 4))".
  std::string to_string() const;
  /// Parses the canonical s-expression format. Throws Error on bad input.
  static HypCode parse(const std::string& s);

  // -- constructors ---------------------------------------------------------
  static HypCode base(const std::string& family, Nat i);
  static HypCode fin(FiniteSet d);
  static HypCode tail(Nat t);
  static HypCode stride(Nat a, Nat r, Nat t);  // requires a >= 1, r < a
  static HypCode union_of(HypCode l, HypCode r);
  static HypCode diff(HypCode c, FiniteSet d);
  static HypCode above(HypCode c, Nat t);
  static HypCode opaque(OpaqueKey key);

  /// Padded copy: identical extension, distinct identity, one-one in (c,d).
  /// Nested pads collapse to a single Pad node with an injectively combined
  /// tag (plain tags are even, collapsed tags odd).
  friend HypCode pad(HypCode c, Nat d);

  /// Strips one Pad level if present (the base whose extension this code
  /// shares and from which the tag was derived).
  HypCode pad_base() const;

  /// Deserialization-level Pad constructor taking the stored tag verbatim.
  /// `base` must not itself be a Pad.
  static HypCode pad_with_raw_tag(HypCode base, Nat raw_tag);
  Nat pad_raw_tag() const { return node_->t; }

 private:
  explicit HypCode(Ptr p) : node_(std::move(p)) {}
  static HypCode make(Node n);
  Ptr node_;
};

HypCode pad(HypCode c, Nat d);

struct HypCodeHash {
  std::size_t operator()(const HypCode& c) const { return c.hash(); }
};

}  // namespace limitlab

#endif
