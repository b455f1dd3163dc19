#include "asimkit/parser.hpp"

#include <cctype>
#include <map>
#include <type_traits>

#include "asimkit/error.hpp"

namespace asimkit {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, And, Or, Implies, Iff, Not, Eq, Bottom, Exists, Forall, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (s.compare(i, 3, "_|_") == 0) {
      out.push_back({Tok::Bottom, "_|_", start});
      i += 3;
    } else if (s.compare(i, 3, "<->") == 0) {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::Implies, "->", start});
      i += 2;
    } else if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word = s.substr(start, i - start);
      Tok k = Tok::Ident;
      if (word == "exists") k = Tok::Exists;
      if (word == "forall") k = Tok::Forall;
      out.push_back({k, std::move(word), start});
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '~': k = Tok::Not; break;
        case '=': k = Tok::Eq; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

template <class F>
class Parser {
  static constexpr bool kClassical = std::is_same_v<F, FoFormula>;

 public:
  Parser(const std::string& text, const Vocabulary* vocab) : tokens_(lex(text)), vocab_(vocab) {}

  F parse() {
    F f = formula();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      throw ParseError(std::string("expected ") + what + (peek().kind == Tok::End ? " but input ended" : " but found '" + peek().text + "'"),
                       peek().pos);
    }
    return next();
  }

  F formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quantified();
    if constexpr (kClassical) {
      F lhs = implication();
      if (accept(Tok::Iff)) return F::iff(lhs, formula());
      return lhs;
    } else {
      return implication();
    }
  }

  F quantified() {
    const bool is_exists = next().kind == Tok::Exists;
    const Token& v = expect(Tok::Ident, "a bound variable");
    Variable var = v.text;
    expect(Tok::Dot, "'.' after the bound variable");
    F body = formula();
    return is_exists ? F::exists(var, body) : F::forall(var, body);
  }

  F implication() {
    F lhs = disjunction();
    if (accept(Tok::Implies)) {
      // Right operand may itself start with a quantifier or contain <->-free implications.
      F rhs = peek().kind == Tok::Exists || peek().kind == Tok::Forall ? quantified() : implication();
      return F::implies(lhs, rhs);
    }
    return lhs;
  }

  F disjunction() {
    F acc = conjunction();
    while (accept(Tok::Or)) acc = F::disj(acc, conjunction());
    return acc;
  }

  F conjunction() {
    F acc = unary();
    while (accept(Tok::And)) acc = F::conj(acc, unary());
    return acc;
  }

  F unary() {
    if constexpr (kClassical) {
      if (peek().kind == Tok::Not) {
        next();
        return F::negation(unary());
      }
    } else {
      if (peek().kind == Tok::Not) throw ParseError("'~' is not part of the intuitionistic language", peek().pos);
    }
    return primary();
  }

  F primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        F f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Exists:
      case Tok::Forall:
        return quantified();
      case Tok::Bottom:
        if constexpr (kClassical) {
          throw ParseError("'_|_' is not part of the classical language; write ~(x = x)", t.pos);
        } else {
          next();
          return F::bottom();
        }
      case Tok::Ident:
        return atomic();
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    }
  }

  F atomic() {
    const Token name = next();
    if constexpr (kClassical) {
      if (accept(Tok::Eq)) {
        const Token& rhs = expect(Tok::Ident, "a variable after '='");
        return F::eq(name.text, rhs.text);
      }
    }
    std::vector<Variable> args;
    if (accept(Tok::LParen)) {
      args.push_back(expect(Tok::Ident, "a variable").text);
      while (accept(Tok::Comma)) args.push_back(expect(Tok::Ident, "a variable").text);
      expect(Tok::RParen, "')'");
    } else if constexpr (kClassical) {
      throw ParseError("classical letter '" + name.text + "' needs arguments", name.pos);
    }
    check_arity(name, static_cast<int>(args.size()));
    if constexpr (kClassical) {
      return F::atom(name.text, std::move(args));
    } else {
      if (is_reserved_letter(name.text)) {
        throw ParseError("'" + name.text + "' is reserved for the classical side", name.pos);
      }
      return F::atom(name.text, std::move(args));
    }
  }

  void check_arity(const Token& name, int count) {
    std::optional<int> declared;
    if (vocab_) {
      declared = kClassical ? vocab_->arity(name.text) : vocab_->intuitionistic_arity(name.text);
    }
    if constexpr (kClassical) {
      if (!declared && is_reserved_letter(name.text)) declared = 2;
    }
    if (!declared) {
      auto it = seen_.find(name.text);
      if (it != seen_.end()) declared = it->second;
    }
    if (declared && *declared != count) throw ArityError(name.text, *declared, count);
    seen_.emplace(name.text, count);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_;
  std::map<std::string, int> seen_;
};

}  // namespace

IntFormula parse_int(const std::string& text, const Vocabulary* vocab) { return Parser<IntFormula>(text, vocab).parse(); }

FoFormula parse_fo(const std::string& text, const Vocabulary* vocab) { return Parser<FoFormula>(text, vocab).parse(); }

}  // namespace asimkit
