#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ddero::frontend {

enum class Tok {
  Ident,
  Integer,
  Dollar,  // $c12
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Equals,
  Prime,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits text into tokens; '#' starts a comment running to end of line.
/// Throws ParseError on an unexpected character.
std::vector<Token> tokenize(std::string_view text);

std::string describe(Tok t);

}  // namespace ddero::frontend
