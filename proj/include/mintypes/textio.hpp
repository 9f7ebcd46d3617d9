#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mintypes/error.hpp"
#include "mintypes/syntax.hpp"
#include "mintypes/types.hpp"

namespace mintypes {

// Character offsets (code points, not bytes) into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span);
  const std::string& message() const { return message_; }
  SourceSpan span() const { return span_; }

 private:
  std::string message_;
  SourceSpan span_;
};

// `\x. t` or `λx. t`, application by juxtaposition, `*` or `Ω` for Omega.
// Binders are renamed where needed so no binder shadows another name.
Term parse_term(std::string_view text);
// Same grammar, binder names kept exactly as written.
Term parse_term_exact(std::string_view text);
SType parse_type(std::string_view text);
MType parse_mtype(std::string_view text);
// `x:[a], y:[[a] -> a]`; `x:[]` is the same as leaving x out.
Env parse_env(std::string_view text);

std::string print_term(const Term& t);
std::string print_type(const SType& s);
std::string print_mtype(const MType& a);
std::string print_env(const Env& g);

// Renders a ParseError with a caret line under the offending span.
std::string render_diagnostic(std::string_view text, const ParseError& e);

}  // namespace mintypes
