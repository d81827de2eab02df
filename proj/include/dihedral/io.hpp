// Seifert matrix text formats and census record readers.
//
// Accepted matrix syntax:
//   brace form        {{-1,1},{0,2}}
//   JSON arrays       [[-1,1],[0,2]]
//   whitespace grid   rows on separate lines (or separated by ';'),
//                     entries separated by blanks or commas
// "{}" and "[]" are the 0x0 matrix of the unknot.
#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/seifert.hpp"
#include "json.hpp"

namespace dihedral {

namespace detail {

class MatrixParser {
 public:
  explicit MatrixParser(std::string_view text) : s_(text) {}

  IntMatrix parse() {
    skip_space();
    if (pos_ == s_.size()) fail("empty input");
    const char c = s_[pos_];
    std::vector<std::vector<Integer>> rows;
    if (c == '{' || c == '[') {
      rows = nested(c, c == '{' ? '}' : ']');
      skip_space();
      if (pos_ != s_.size()) fail("trailing characters after matrix");
    } else {
      rows = grid();
    }
    return assemble(rows);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw MatrixInputError(MatrixErrorKind::Malformed, msg, pos_);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void skip_blank() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Integer integer() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      pos_ = start;
      fail("matrix entries must be integers");
    }
    std::string tok(s_.substr(start, pos_ - start));
    if (tok[0] == '+') tok.erase(0, 1);
    return Integer(tok);
  }

  std::vector<std::vector<Integer>> nested(char open, char close) {
    expect(open);
    std::vector<std::vector<Integer>> rows;
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == close) {
      ++pos_;
      return rows;
    }
    for (;;) {
      skip_space();
      row_pos_.push_back(pos_);
      rows.push_back(row(open, close));
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(close);
      return rows;
    }
  }

  std::vector<Integer> row(char open, char close) {
    expect(open);
    std::vector<Integer> r;
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == close) {
      ++pos_;
      return r;
    }
    for (;;) {
      skip_space();
      r.push_back(integer());
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(close);
      return r;
    }
  }

  std::vector<std::vector<Integer>> grid() {
    std::vector<std::vector<Integer>> rows;
    std::vector<Integer> cur;
    auto flush = [&] {
      if (!cur.empty()) rows.push_back(std::move(cur));
      cur.clear();
    };
    while (pos_ < s_.size()) {
      skip_blank();
      if (pos_ == s_.size()) break;
      const char c = s_[pos_];
      if (c == '\n' || c == ';') {
        ++pos_;
        flush();
      } else if (c == ',') {
        ++pos_;
      } else {
        if (cur.empty()) row_pos_.push_back(pos_);
        cur.push_back(integer());
        if (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
            s_[pos_] != ',' && s_[pos_] != ';')
          fail("unexpected character in matrix grid");
      }
    }
    flush();
    return rows;
  }

  IntMatrix assemble(const std::vector<std::vector<Integer>>& rows) const {
    if (rows.empty()) return IntMatrix();
    const std::size_t cols = rows.front().size();
    std::vector<Integer> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw MatrixInputError(MatrixErrorKind::Malformed,
                               "row " + std::to_string(i + 1) + " has " +
                                   std::to_string(rows[i].size()) + " entries, row 1 has " +
                                   std::to_string(cols),
                               i < row_pos_.size() ? row_pos_[i] : MatrixInputError::npos);
      entries.insert(entries.end(), rows[i].begin(), rows[i].end());
    }
    return IntMatrix(rows.size(), cols, std::move(entries));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> row_pos_;
};

}  // namespace detail

/// Parses any accepted syntax without Seifert validation.
inline IntMatrix parse_int_matrix(std::string_view text) {
  return detail::MatrixParser(text).parse();
}

inline SeifertMatrix parse_matrix(std::string_view text) {
  return SeifertMatrix(parse_int_matrix(text));
}

/// Brace form, no spaces.
inline std::string render_matrix(const IntMatrix& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",{" : "{";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += to_string(m(i, j));
    }
    s += '}';
  }
  return s + '}';
}

inline std::string render_matrix(const SeifertMatrix& v) { return render_matrix(v.matrix()); }

/// One knot from an input source, or the reason it could not be read.
struct KnotRecord {
  std::string name;
  std::optional<SeifertMatrix> seifert;
  /// e.g. "census.csv:4"
  std::string source;
  std::string error_kind;
  std::string error;
  std::optional<std::size_t> error_position;

  bool ok() const noexcept { return seifert.has_value(); }
};

namespace detail {

inline void fill_matrix(KnotRecord& rec, std::string_view text) {
  try {
    rec.seifert = parse_matrix(text);
  } catch (const MatrixInputError& e) {
    rec.error_kind = to_string(e.kind());
    rec.error = e.what();
    if (e.position() != MatrixInputError::npos) rec.error_position = e.position();
  }
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Comma-separated fields with RFC 4180 quoting. Quoted fields may span lines.
inline std::vector<std::vector<std::string>> csv_records(std::string_view text,
                                                        std::vector<std::size_t>& lines) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  std::size_t line = 1, rec_line = 1;
  auto end_record = [&] {
    if (any || !rec.empty() || !trim(field).empty()) {
      rec.push_back(std::move(field));
      out.push_back(std::move(rec));
      lines.push_back(rec_line);
    }
    rec.clear();
    field.clear();
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_record();
      rec_line = ++line;
    } else if (c != '\r') {
      field += c;
    }
  }
  end_record();
  return out;
}

// Rebuilds the "seifert" value of a JSON-lines record as text, keeping integer
// lexemes verbatim so entries beyond 64 bits survive.
class SeifertSax : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::optional<std::string> name;
  std::optional<std::string> seifert;
  std::string error;

  bool null() override { return scalar("null"); }
  bool boolean(bool b) override { return scalar(b ? "true" : "false"); }
  bool number_integer(number_integer_t v) override { return scalar(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return scalar(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return scalar(s); }
  bool string(string_t& s) override {
    if (depth_ == 1 && key_ == "name") name = s;
    if (depth_ == 1 && key_ == "seifert") seifert = s;
    return scalar("\"\"");
  }
  bool binary(binary_t&) override { return scalar("null"); }
  bool start_object(std::size_t) override {
    if (depth_ == 0 && !top_) top_ = true;
    else if (depth_ == 0) return fail_with("more than one value on the line");
    open('{');
    return true;
  }
  bool key(string_t& k) override {
    if (depth_ == 1) key_ = k;
    return true;
  }
  bool end_object() override {
    close('}');
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ == 0) return fail_with("record must be a JSON object");
    open('[');
    return true;
  }
  bool end_array() override {
    close(']');
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override {
    error = "invalid JSON at byte " + std::to_string(pos) + ": " + e.what();
    return false;
  }

 private:
  bool scalar(const std::string& lexeme) {
    if (depth_ == 0) return fail_with("record must be a JSON object");
    if (capturing_) {
      comma();
      buf_ += lexeme;
    }
    return true;
  }
  void open(char c) {
    ++depth_;
    if (depth_ == 2 && key_ == "seifert" && c == '[') {
      capturing_ = true;
      buf_.clear();
      need_comma_.clear();
    }
    if (capturing_) {
      comma();
      buf_ += c;
      need_comma_.push_back(false);
    }
  }
  void close(char c) {
    if (capturing_) {
      buf_ += c;
      need_comma_.pop_back();
      if (need_comma_.empty()) {
        capturing_ = false;
        seifert = buf_;
      }
    }
    --depth_;
  }
  void comma() {
    if (need_comma_.empty()) return;
    if (need_comma_.back()) buf_ += ',';
    need_comma_.back() = true;
  }
  bool fail_with(std::string msg) {
    error = std::move(msg);
    return false;
  }

  int depth_ = 0;
  bool top_ = false;
  std::string key_;
  bool capturing_ = false;
  std::string buf_;
  std::vector<bool> need_comma_;
};

}  // namespace detail

/// CSV with a header naming the columns "name" and "seifert" (any case, any
/// order). Rows that cannot be read become error records.
inline std::vector<KnotRecord> read_csv(std::string_view text, const std::string& origin) {
  std::vector<std::size_t> lines;
  auto rows = detail::csv_records(text, lines);
  std::vector<KnotRecord> out;
  if (rows.empty()) return out;
  std::optional<std::size_t> name_col, matrix_col;
  for (std::size_t j = 0; j < rows[0].size(); ++j) {
    const std::string h = detail::lower(detail::trim(rows[0][j]));
    if (h == "name" && !name_col) name_col = j;
    if (h == "seifert" && !matrix_col) matrix_col = j;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    KnotRecord rec;
    rec.source = origin + ":" + std::to_string(lines[i]);
    const auto& row = rows[i];
    if (name_col && *name_col < row.size()) rec.name = detail::trim(row[*name_col]);
    if (!matrix_col) {
      rec.error_kind = "malformed-record";
      rec.error = "header has no 'seifert' column";
    } else if (*matrix_col >= row.size()) {
      rec.error_kind = "malformed-record";
      rec.error = "row has " + std::to_string(row.size()) + " fields, no seifert value";
    } else {
      detail::fill_matrix(rec, row[*matrix_col]);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

/// One JSON object per non-blank line: {"name": ..., "seifert": [[...]]}.
/// The seifert value may also be a string in any accepted matrix syntax.
inline std::vector<KnotRecord> read_json_lines(std::string_view text, const std::string& origin) {
  std::vector<KnotRecord> out;
  std::size_t line = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    const std::string body = detail::trim(text.substr(start, end - start));
    start = end + 1;
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }
    KnotRecord rec;
    rec.source = origin + ":" + std::to_string(line);
    detail::SeifertSax sax;
    const bool parsed = nlohmann::json::sax_parse(body, &sax);
    if (sax.name) rec.name = *sax.name;
    if (!parsed) {
      rec.error_kind = "malformed-record";
      rec.error = sax.error.empty() ? "invalid JSON" : sax.error;
    } else if (!sax.seifert) {
      rec.error_kind = "malformed-record";
      rec.error = "record has no 'seifert' field";
    } else {
      detail::fill_matrix(rec, *sax.seifert);
    }
    out.push_back(std::move(rec));
    if (end == text.size()) break;
  }
  return out;
}

/// JSON lines when the first non-blank character is '{', CSV otherwise.
inline std::vector<KnotRecord> read_records(std::string_view text, const std::string& origin) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? read_json_lines(text, origin) : read_csv(text, origin);
  }
  return {};
}

}  // namespace dihedral
