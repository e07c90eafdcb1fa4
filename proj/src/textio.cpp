#include "bigalois/textio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace bigalois {

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, const AlphabetPtr& alphabet, const TowerPtr& tower,
             int line, int column)
      : s_(text), alphabet_(alphabet), tower_(tower), line_(line), column_(column) {}

  NcPoly parse() {
    NcPoly out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + static_cast<int>(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NcPoly constant(const Scalar& c) const { return NcPoly::constant(alphabet_, c); }

  NcPoly expr() {
    NcPoly out = term();
    while (true) {
      if (eat('+')) out += term();
      else if (eat('-')) out -= term();
      else return out;
    }
  }

  NcPoly term() {
    NcPoly out = unary();
    while (true) {
      if (eat('*')) {
        out = out * unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        auto d = unary().as_constant();
        if (!d) {
          pos_ = at;
          fail("division by a non-constant");
        }
        if (d->is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        out *= d->inverse();
      } else {
        return out;
      }
    }
  }

  NcPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  NcPoly power() {
    NcPoly base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    NcPoly out = constant(Scalar(1));
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  NcPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NcPoly out = expr();
      if (!eat(')')) fail("expected ')'");
      return out;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_' || s_[pos_] == '\'')) {
        ++pos_;
      }
      if (pos_ < s_.size() && s_[pos_] == '[') {
        const auto close = s_.find(']', pos_);
        if (close == std::string::npos) fail("unterminated '['");
        pos_ = close + 1;
      }
      const std::string name = s_.substr(start, pos_ - start);
      if (auto l = alphabet_->find(name)) return NcPoly::letter(alphabet_, *l);
      for (int k = 0; k < tower_->height(); ++k) {
        if (tower_->level(k).name == name) return constant(Scalar::generator(tower_, k));
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  AlphabetPtr alphabet_;
  TowerPtr tower_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

const AlphabetPtr& no_letters() {
  static const AlphabetPtr a = make_alphabet({});
  return a;
}

Scalar scalar_at(const std::string& text, const TowerPtr& tower, int line, int column) {
  NcPoly p = ExprParser(text, no_letters(), tower, line, column).parse();
  return *p.as_constant();
}

std::vector<std::string> split_ws(const std::string& line, std::vector<int>* columns = nullptr) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back(line.substr(start, i - start));
    if (columns) columns->push_back(static_cast<int>(start) + 1);
  }
  return out;
}

struct ParsedMatrix {
  MatrixFile file;
  int matrix_line = 0;
};

ParsedMatrix parse_matrix_impl(const std::string& text, const TowerPtr& base) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  TowerPtr tower = base;
  std::optional<std::size_t> size;
  int matrix_line = 0;
  std::vector<Scalar> entries;
  const AlphabetPtr x = make_alphabet({"x"});

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    auto words = split_ws(line);
    if (words.empty()) continue;
    if (!size && words[0] == "root") {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError("expected 'root NAME: polynomial'", line_no, 1);
      auto head = split_ws(line.substr(0, colon));
      if (head.size() != 2) throw ParseError("expected 'root NAME: polynomial'", line_no, 1);
      const std::string name = head[1];
      if (name == "x" || !std::isalpha(static_cast<unsigned char>(name[0])) || tower->has_name(name)) {
        throw ParseError("invalid or duplicate root name '" + name + "'", line_no, 1);
      }
      NcPoly p = ExprParser(line.substr(colon + 1), x, tower, line_no, static_cast<int>(colon) + 2)
                     .parse();
      if (p.degree() != 2 || !p.coefficient({0, 0}).is_one()) {
        throw ParseError("root polynomial must be monic of degree 2 in x", line_no,
                         static_cast<int>(colon) + 2);
      }
      RootExtension ext;
      try {
        ext = extend_with_root(tower, p.coefficient({0}), p.coefficient({}), name);
      } catch (const TowerLimitError& e) {
        throw ParseError(e.what(), line_no, 1);
      }
      if (!ext.extended) {
        throw ParseError("polynomial for '" + name + "' has a root in the field already",
                         line_no, static_cast<int>(colon) + 2);
      }
      tower = ext.tower;
      continue;
    }
    if (!size) {
      if (words[0] != "matrix" || words.size() != 2) {
        throw ParseError("expected 'root ...' or 'matrix N'", line_no, 1);
      }
      try {
        const long n = std::stol(words[1]);
        if (n <= 0 || n > 64) throw std::out_of_range("size");
        size = static_cast<std::size_t>(n);
      } catch (const std::logic_error&) {
        throw ParseError("invalid matrix size '" + words[1] + "'", line_no, 8);
      }
      matrix_line = line_no;
      continue;
    }
    std::vector<int> cols;
    words = split_ws(line, &cols);
    if (entries.size() == *size * *size) throw ParseError("too many matrix rows", line_no, 1);
    if (words.size() != *size) {
      throw ParseError("expected " + std::to_string(*size) + " entries, found " +
                           std::to_string(words.size()),
                       line_no, 1);
    }
    for (std::size_t j = 0; j < words.size(); ++j) {
      entries.push_back(scalar_at(words[j], tower, line_no, cols[j]));
    }
  }
  if (!size) throw ParseError("missing 'matrix N' line", line_no, 0);
  if (entries.size() != *size * *size) {
    throw ParseError("expected " + std::to_string(*size) + " matrix rows", line_no, 0);
  }
  for (auto& e : entries) e = e.lifted(tower);
  return {{tower, Matrix(*size, *size, std::move(entries))}, matrix_line};
}

}  // namespace

NcPoly parse_poly(const std::string& text, const AlphabetPtr& alphabet, const TowerPtr& tower) {
  return ExprParser(text, alphabet, tower, 0, 0).parse();
}

Scalar parse_scalar(const std::string& text, const TowerPtr& tower) {
  return scalar_at(text, tower, 0, 0);
}

MatrixFile parse_matrix_file(const std::string& text, const TowerPtr& base) {
  return parse_matrix_impl(text, base).file;
}

FormMatrix parse_form_file(const std::string& text, const TowerPtr& base) {
  auto parsed = parse_matrix_impl(text, base);
  try {
    return FormMatrix(parsed.file.matrix);
  } catch (const SingularMatrix& e) {
    throw ParseError(e.what(), parsed.matrix_line, 1);
  }
}

std::string write_matrix_file(const Matrix& m) {
  std::ostringstream out;
  const TowerPtr tower = m.tower();
  TowerPtr prefix = Tower::rationals_with_cap(tower->cap());
  for (const auto& level : tower->levels()) {
    Scalar p1(prefix, level.linear), p0(prefix, level.constant);
    out << "root " << level.name << ": x^2";
    if (!p1.is_zero()) out << " + (" << p1.str() << ")*x";
    if (!p0.is_zero()) out << " + (" << p0.str() << ")";
    out << "\n";
    prefix = prefix->adjoin(level.name, level.linear, level.constant, level.conjugation);
  }
  out << "matrix " << m.rows() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).lifted(tower).str();
    }
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bigalois
