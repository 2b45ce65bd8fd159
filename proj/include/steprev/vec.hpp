#pragma once

#include <map>
#include <sstream>
#include <string>

#include "steprev/action.hpp"
#include "steprev/errors.hpp"
#include "steprev/numbers.hpp"

namespace steprev {

/// Integer vector over named keys in canonical zero-free form: no entry is
/// ever stored with value 0, so structural equality is vector equality.
template <class K>
class VecOf {
 public:
  using Map = std::map<K, Int>;

  VecOf() = default;
  VecOf(std::initializer_list<std::pair<const K, Int>> init) {
    for (const auto& [k, v] : init) add(k, v);
  }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Int at(const K& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? Int(0) : it->second;
  }

  void set(const K& key, Int value) {
    if (value == 0)
      entries_.erase(key);
    else
      entries_[key] = std::move(value);
  }

  void add(const K& key, const Int& delta) { set(key, at(key) + delta); }

  /// Sum of entries; the size |α| of a multiset.
  Int total() const {
    Int s = 0;
    for (const auto& [k, v] : entries_) s += v;
    return s;
  }

  bool is_multiset() const {
    for (const auto& [k, v] : entries_)
      if (v < 0) return false;
    return true;
  }

  bool is_set() const {
    for (const auto& [k, v] : entries_)
      if (v != 1) return false;
    return true;
  }

  VecOf operator+(const VecOf& o) const {
    VecOf r = *this;
    for (const auto& [k, v] : o.entries_) r.add(k, v);
    return r;
  }

  VecOf operator-(const VecOf& o) const {
    VecOf r = *this;
    for (const auto& [k, v] : o.entries_) r.add(k, -v);
    return r;
  }

  VecOf operator-() const {
    VecOf r;
    for (const auto& [k, v] : entries_) r.entries_[k] = -v;
    return r;
  }

  VecOf operator*(const Int& c) const {
    VecOf r;
    if (c == 0) return r;
    for (const auto& [k, v] : entries_) r.entries_[k] = v * c;
    return r;
  }

  bool operator==(const VecOf&) const = default;
  auto operator<=>(const VecOf& o) const { return entries_ <=> o.entries_; }

  /// Componentwise order (β ≤ α on multisets and general vectors alike).
  bool leq(const VecOf& o) const {
    for (const auto& [k, v] : entries_)
      if (v > o.at(k)) return false;
    for (const auto& [k, v] : o.entries_)
      if (Int(0) > v && at(k) == 0) return false;
    return true;
  }

  /// "{a:2,b:1}" with keys in map order; "{}" when empty. Used as canonical
  /// state identity for markings, so it must be injective on canonical forms.
  std::string literal() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [k, v] : entries_) {
      if (!first) out << ",";
      first = false;
      if constexpr (std::is_same_v<K, ActionName>)
        out << k.to_string();
      else
        out << k;
      out << ":" << v;
    }
    out << "}";
    return out.str();
  }

 private:
  Map entries_;
};

using ActionVec = VecOf<ActionName>;
using Step = ActionVec;  // steps are the multiset-valued use of ActionVec
using PlaceVec = VecOf<std::string>;
using Marking = PlaceVec;

enum class CombineMode { Sum, Diff, DisjointUnion };

template <class K>
VecOf<K> combine(const VecOf<K>& a, const VecOf<K>& b, CombineMode mode) {
  switch (mode) {
    case CombineMode::Sum:
      return a + b;
    case CombineMode::Diff:
      return a - b;
    case CombineMode::DisjointUnion: {
      VecOf<K> r = a;
      for (const auto& [k, v] : b.entries()) {
        if (a.at(k) != 0) {
          std::string key;
          if constexpr (std::is_same_v<K, ActionName>)
            key = k.to_string();
          else
            key = k;
          throw Error(ErrorCode::OverlappingSupports, "shared key " + key);
        }
        r.add(k, v);
      }
      return r;
    }
  }
  throw Error(ErrorCode::SchemaError, "bad combine mode");
}

/// Index-free image of a step: ~a[tag] entries accumulate onto ~a.
Step noidx(const Step& alpha);

/// ᾱ: every forward name replaced by its reverse, multiplicities kept.
Step reverse_step(const Step& alpha);

/// "(a a ~b)" style literal with sorted repetition, "()" for the empty step.
std::string step_literal(const Step& alpha);

}  // namespace steprev
