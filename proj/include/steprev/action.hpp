#pragma once

#include <compare>
#include <string>

#include "steprev/errors.hpp"

namespace steprev {

enum class ActionKind { Forward, Reverse, IndexedReverse };

const char* to_string(ActionKind kind);

/// Name of an action: a forward action `a`, its reverse `~a`, or an indexed
/// reverse `~a[tag]`. Forward, reverse and indexed names never collide as map
/// keys because the kind participates in the ordering.
struct ActionName {
  std::string base;
  ActionKind kind = ActionKind::Forward;
  std::string index;  // non-empty iff kind == IndexedReverse

  auto operator<=>(const ActionName&) const = default;

  bool is_forward() const { return kind == ActionKind::Forward; }
  std::string to_string() const;
  static ActionName parse(const std::string& literal);
};

inline ActionName fwd(std::string base) { return {std::move(base), ActionKind::Forward, {}}; }

/// a -> ~a. Reversing a reverse or indexed name is rejected: the alphabets in
/// use never contain double reverses.
ActionName rev(const ActionName& a);

/// a -> ~a[index].
ActionName indexed_rev(const std::string& base, std::string index);

/// ~a[tag] -> ~a; other kinds unchanged.
ActionName noidx(const ActionName& a);

}  // namespace steprev
