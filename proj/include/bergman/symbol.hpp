// A small expression grammar for symbols and test functions:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := number | 'i' | zK ['^' int] | 'z' ['^' int] | ces '(' [point] ')'
//            | pow '(' point ';' number ')' | '(' expr ')' ['^' int] | '-' factor
//   point   := number (',' number)*        numbers may carry an 'i' suffix
//
// Closed symbols (ces, pow) may only be multiplied by constants.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bergman/holo.hpp"

namespace bergman {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses an expression in n variables; ces() defaults to the base (1,...,1)/sqrt(n).
HoloFunction parse_symbol(std::string_view text, std::size_t n);

}  // namespace bergman
