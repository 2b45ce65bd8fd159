#include "steprev/action.hpp"

#include <algorithm>

namespace steprev {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverlappingSupports: return "OverlappingSupports";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UnknownPlace: return "UnknownPlace";
    case ErrorCode::DisconnectedSystem: return "DisconnectedSystem";
    case ErrorCode::ForwardDeterminismViolated: return "ForwardDeterminismViolated";
    case ErrorCode::NotEnabled: return "NotEnabled";
    case ErrorCode::StepBoundExceeded: return "StepBoundExceeded";
    case ErrorCode::StateBoundExceeded: return "StateBoundExceeded";
    case ErrorCode::StateCountMismatch: return "StateCountMismatch";
    case ErrorCode::NotCest: return "NotCest";
    case ErrorCode::NotAHomeCover: return "NotAHomeCover";
    case ErrorCode::NotASetSystem: return "NotASetSystem";
    case ErrorCode::NoHomeState: return "NoHomeState";
    case ErrorCode::NotAReverseNet: return "NotAReverseNet";
    case ErrorCode::IncompletePairing: return "IncompletePairing";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidNet: return "InvalidNet";
  }
  return "UnknownError";
}

const char* to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Forward: return "forward";
    case ActionKind::Reverse: return "reverse";
    case ActionKind::IndexedReverse: return "indexed-reverse";
  }
  return "?";
}

std::string ActionName::to_string() const {
  switch (kind) {
    case ActionKind::Forward: return base;
    case ActionKind::Reverse: return "~" + base;
    case ActionKind::IndexedReverse: return "~" + base + "[" + index + "]";
  }
  return base;
}

ActionName ActionName::parse(const std::string& literal) {
  if (literal.empty()) throw Error(ErrorCode::SchemaError, "empty action id");
  if (literal[0] != '~') {
    if (literal.find_first_of("~[]") != std::string::npos)
      throw Error(ErrorCode::SchemaError, "forward action id contains reserved chars: " + literal);
    return fwd(literal);
  }
  std::string rest = literal.substr(1);
  auto open = rest.find('[');
  if (open == std::string::npos) {
    if (rest.empty() || rest.find_first_of("~[]") != std::string::npos)
      throw Error(ErrorCode::SchemaError, "bad reverse action id: " + literal);
    return {rest, ActionKind::Reverse, {}};
  }
  if (rest.back() != ']' || open == 0)
    throw Error(ErrorCode::SchemaError, "bad indexed action id: " + literal);
  std::string base = rest.substr(0, open);
  std::string index = rest.substr(open + 1, rest.size() - open - 2);
  if (base.find_first_of("~[]") != std::string::npos || index.empty())
    throw Error(ErrorCode::SchemaError, "bad indexed action id: " + literal);
  return {base, ActionKind::IndexedReverse, index};
}

ActionName rev(const ActionName& a) {
  if (a.kind != ActionKind::Forward)
    throw Error(ErrorCode::SchemaError, "cannot reverse a non-forward action: " + a.to_string());
  return {a.base, ActionKind::Reverse, {}};
}

ActionName indexed_rev(const std::string& base, std::string index) {
  if (index.empty()) throw Error(ErrorCode::SchemaError, "indexed reverse needs a tag");
  return {base, ActionKind::IndexedReverse, std::move(index)};
}

ActionName noidx(const ActionName& a) {
  if (a.kind != ActionKind::IndexedReverse) return a;
  return {a.base, ActionKind::Reverse, {}};
}

}  // namespace steprev
