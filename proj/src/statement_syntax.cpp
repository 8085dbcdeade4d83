#include "smaa_choquet/statement_syntax.hpp"

#include <algorithm>
#include <cctype>

namespace smaa_choquet {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

Token trim(std::string_view s, std::size_t column) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {s.substr(b, e - b), column + b};
}

std::size_t lookup(const Token& t, const std::vector<std::string>& labels, const char* what) {
  if (t.text.empty()) throw StatementSyntaxError(std::string("missing ") + what, t.column);
  const auto it = std::find(labels.begin(), labels.end(), t.text);
  if (it == labels.end()) {
    throw StatementSyntaxError(std::string("unknown ") + what + " '" + std::string(t.text) + "'",
                               t.column);
  }
  return static_cast<std::size_t>(it - labels.begin());
}

enum class Op { kGreater, kGreaterEqual, kEqual };

struct Binary {
  Token left;
  Token right;
  Op op;
};

// Splits "<left> op <right>" at the first '>' or '='.
Binary split_binary(const Token& body) {
  const std::size_t pos = body.text.find_first_of(">=");
  if (pos == std::string_view::npos) {
    throw StatementSyntaxError("expected one of '>', '>=', '='", body.column + body.text.size());
  }
  Op op = Op::kEqual;
  std::size_t width = 1;
  if (body.text[pos] == '>') {
    if (pos + 1 < body.text.size() && body.text[pos + 1] == '=') {
      op = Op::kGreaterEqual;
      width = 2;
    } else {
      op = Op::kGreater;
    }
  }
  Binary out{trim(body.text.substr(0, pos), body.column),
             trim(body.text.substr(pos + width), body.column + pos + width), op};
  if (out.right.text.find_first_of(">=") != std::string_view::npos) {
    throw StatementSyntaxError("more than one comparison operator",
                               out.right.column + out.right.text.find_first_of(">="));
  }
  return out;
}

std::pair<Token, Token> split_comma(const Token& t) {
  const std::size_t pos = t.text.find(',');
  if (pos == std::string_view::npos) throw StatementSyntaxError("expected ','", t.column);
  auto second = trim(t.text.substr(pos + 1), t.column + pos + 1);
  if (second.text.find(',') != std::string_view::npos) {
    throw StatementSyntaxError("expected exactly two labels", second.column);
  }
  return {trim(t.text.substr(0, pos), t.column), second};
}

std::pair<Token, Token> parse_couple(const Token& t) {
  if (t.text.size() < 2 || t.text.front() != '(' || t.text.back() != ')') {
    throw StatementSyntaxError("expected '(label,label)'", t.column);
  }
  return split_comma(trim(t.text.substr(1, t.text.size() - 2), t.column + 1));
}

}  // namespace

PreferenceStatement parse_statement(std::string_view text,
                                    const std::vector<std::string>& criteria,
                                    const std::vector<std::string>& alternatives) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw StatementSyntaxError("expected '<kind>:' prefix", 0);
  }
  const Token keyword = trim(text.substr(0, colon), 0);
  const Token body = trim(text.substr(colon + 1), colon + 1);

  if (keyword.text == "imp") {
    const auto b = split_binary(body);
    const std::size_t i = lookup(b.left, criteria, "criterion");
    const std::size_t j = lookup(b.right, criteria, "criterion");
    if (i == j) throw StatementSyntaxError("criterion compared with itself", b.right.column);
    const ImportanceKind kind = b.op == Op::kGreater        ? ImportanceKind::kStrict
                                : b.op == Op::kGreaterEqual ? ImportanceKind::kWeak
                                                            : ImportanceKind::kEqual;
    return ImportanceStatement{kind, i, j};
  }
  if (keyword.text == "synergy" || keyword.text == "redundancy") {
    const auto [l, r] = split_comma(body);
    const std::size_t i = lookup(l, criteria, "criterion");
    const std::size_t j = lookup(r, criteria, "criterion");
    if (i == j) throw StatementSyntaxError("interaction needs two distinct criteria", r.column);
    return InteractionStatement{
        keyword.text == "synergy" ? InteractionKind::kSynergy : InteractionKind::kRedundancy, i,
        j};
  }
  if (keyword.text == "alt") {
    const auto b = split_binary(body);
    const std::size_t a = lookup(b.left, alternatives, "alternative");
    const std::size_t c = lookup(b.right, alternatives, "alternative");
    const ComparisonKind kind = b.op == Op::kGreater        ? ComparisonKind::kStrict
                                : b.op == Op::kGreaterEqual ? ComparisonKind::kWeak
                                                            : ComparisonKind::kIndifferent;
    return ComparisonStatement{kind, a, c};
  }
  if (keyword.text == "int") {
    const auto b = split_binary(body);
    if (b.op == Op::kGreaterEqual) {
      throw StatementSyntaxError("intensity statements use '>' or '='", b.right.column);
    }
    const auto [l1, l2] = parse_couple(b.left);
    const auto [r1, r2] = parse_couple(b.right);
    return IntensityStatement{b.op == Op::kGreater ? IntensityKind::kStrict : IntensityKind::kEqual,
                              lookup(l1, alternatives, "alternative"),
                              lookup(l2, alternatives, "alternative"),
                              lookup(r1, alternatives, "alternative"),
                              lookup(r2, alternatives, "alternative")};
  }
  throw StatementSyntaxError("unknown statement kind '" + std::string(keyword.text) + "'",
                             keyword.column);
}

std::string format_statement(const PreferenceStatement& statement,
                             const std::vector<std::string>& criteria,
                             const std::vector<std::string>& alternatives) {
  return std::visit(
      [&](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, ImportanceStatement>) {
          const char* op = st.kind == ImportanceKind::kStrict ? " > "
                           : st.kind == ImportanceKind::kWeak ? " >= "
                                                              : " = ";
          return "imp: " + criteria.at(st.first) + op + criteria.at(st.second);
        } else if constexpr (std::is_same_v<T, InteractionStatement>) {
          return std::string(st.kind == InteractionKind::kSynergy ? "synergy: " : "redundancy: ") +
                 criteria.at(st.first) + "," + criteria.at(st.second);
        } else if constexpr (std::is_same_v<T, ComparisonStatement>) {
          const char* op = st.kind == ComparisonKind::kStrict ? " > "
                           : st.kind == ComparisonKind::kWeak ? " >= "
                                                              : " = ";
          return "alt: " + alternatives.at(st.better) + op + alternatives.at(st.worse);
        } else {
          return "int: (" + alternatives.at(st.a) + "," + alternatives.at(st.b) + ")" +
                 (st.kind == IntensityKind::kStrict ? " > " : " = ") + "(" +
                 alternatives.at(st.c) + "," + alternatives.at(st.d) + ")";
        }
      },
      statement);
}

}  // namespace smaa_choquet
