#pragma once

#include <stdexcept>
#include <string>

namespace cubinv {

// Every failure mode of the library carries one of these codes. The CLI maps
// usage-class codes to exit 2 and everything else to exit 1.
enum class errc {
  // scalar / tower
  DepthExceeded,
  ZeroRadicand,
  SingularChange,
  // elimination
  NonHomogeneousInput,
  VarAbsent,
  ZeroForm,
  // involution
  NotInvariant,
  IdentityInvolution,
  UnsupportedSignature,
  LineNotOnCubic,
  // fibration
  DegenerateFibration,
  PointNotOnC,
  LineNotInvariant,
  LineIsPointwiseFixed,
  NotTransverse,
  // covers
  OddBranchCount,
  NegativeGenus,
  InconsistentRamification,
  // rebuild
  RankTooLow,
  CubicSingular,
  // hodge
  NotSmooth,
  // cli / parsing
  SyntaxError,
  WrongArity,
  NonHomogeneous,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::DepthExceeded: return "DepthExceeded";
    case errc::ZeroRadicand: return "ZeroRadicand";
    case errc::SingularChange: return "SingularChange";
    case errc::NonHomogeneousInput: return "NonHomogeneousInput";
    case errc::VarAbsent: return "VarAbsent";
    case errc::ZeroForm: return "ZeroForm";
    case errc::NotInvariant: return "NotInvariant";
    case errc::IdentityInvolution: return "IdentityInvolution";
    case errc::UnsupportedSignature: return "UnsupportedSignature";
    case errc::LineNotOnCubic: return "LineNotOnCubic";
    case errc::DegenerateFibration: return "DegenerateFibration";
    case errc::PointNotOnC: return "PointNotOnC";
    case errc::LineNotInvariant: return "LineNotInvariant";
    case errc::LineIsPointwiseFixed: return "LineIsPointwiseFixed";
    case errc::NotTransverse: return "NotTransverse";
    case errc::OddBranchCount: return "OddBranchCount";
    case errc::NegativeGenus: return "NegativeGenus";
    case errc::InconsistentRamification: return "InconsistentRamification";
    case errc::RankTooLow: return "RankTooLow";
    case errc::CubicSingular: return "CubicSingular";
    case errc::NotSmooth: return "NotSmooth";
    case errc::SyntaxError: return "SyntaxError";
    case errc::WrongArity: return "WrongArity";
    case errc::NonHomogeneous: return "NonHomogeneous";
  }
  return "UnknownError";
}

// True for errors caused by malformed input text / flags rather than by the
// mathematical content of a well-formed request.
inline bool is_usage_error(errc c) {
  return c == errc::SyntaxError || c == errc::WrongArity ||
         c == errc::NonHomogeneous;
}

class domain_error : public std::runtime_error {
 public:
  domain_error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Parse errors additionally carry the byte offset of the offending token.
class parse_error : public domain_error {
 public:
  parse_error(errc code, const std::string& msg, std::size_t offset)
      : domain_error(code, msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw domain_error(code, msg);
}

}  // namespace cubinv
