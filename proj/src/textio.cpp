#include "textio.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "functor.hpp"
#include "matrix.hpp"

namespace corrfun {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t at = 0;
  while (at < s.size() && (s[at] == ' ' || s[at] == '\t')) ++at;
  return s.substr(at);
}

// Line cursor. Directives skip blank and '#' comment lines; body rows are
// consumed verbatim so empty rows stay meaningful.
class Lines {
 public:
  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines_.push_back(std::move(line));
  }

  bool directive_done() {
    while (at_ < lines_.size()) {
      const std::string t = trimmed(lines_[at_]);
      if (!t.empty() && t[0] != '#') return false;
      ++at_;
    }
    return true;
  }

  std::pair<std::size_t, std::string> directive() {
    require(!directive_done(), Errc::parse, "unexpected end of input");
    ++at_;
    return {at_, trimmed(lines_[at_ - 1])};
  }

  std::pair<std::size_t, std::string> raw() {
    if (at_ >= lines_.size()) {
      if (!pretended_) {
        // a trailing zero-length row may be missing its newline
        pretended_ = true;
        return {lines_.size() + 1, std::string()};
      }
      fail(Errc::parse, "line " + std::to_string(lines_.size() + 1) +
                            ": unexpected end of input");
    }
    ++at_;
    return {at_, trimmed(lines_[at_ - 1])};
  }

 private:
  std::vector<std::string> lines_;
  std::size_t at_ = 0;
  bool pretended_ = false;
};

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(std::move(w));
  return words;
}

std::size_t parse_count(const std::string& word, std::size_t line) {
  std::size_t value = 0;
  for (char c : word) {
    if (c < '0' || c > '9') parse_fail(line, "expected a number, got " + word);
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > 1000000) parse_fail(line, "number out of range");
  }
  return value;
}

Scalar parse_rational(const std::string& word, std::size_t line) {
  const std::size_t slash = word.find('/');
  const std::string num = slash == std::string::npos ? word : word.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : word.substr(slash + 1);
  auto integer = [&](const std::string& s) {
    if (s.empty()) parse_fail(line, "empty number in " + word);
    std::size_t at = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (at == s.size()) parse_fail(line, "bare sign in " + word);
    for (; at < s.size(); ++at)
      if (s[at] < '0' || s[at] > '9')
        parse_fail(line, "malformed rational " + word);
    return mpz_class(s);
  };
  const mpz_class d = integer(den);
  if (d == 0) parse_fail(line, "zero denominator in " + word);
  mpq_class q(integer(num), d);
  q.canonicalize();
  return Scalar(q);
}

Correspondence parse_correspondence_body(Lines& lines) {
  const auto [header_line, header] = lines.directive();
  const std::vector<std::string> words = split_words(header);
  if (words.size() != 3 || words[0] != "corr")
    parse_fail(header_line, "expected 'corr <target> <source>'");
  const std::size_t target = parse_count(words[1], header_line);
  const std::size_t source = parse_count(words[2], header_line);
  if (source > 63) parse_fail(header_line, "source set too large");
  Correspondence out(target, source);
  for (std::size_t y = 0; y < target; ++y) {
    const auto [row_line, row] = lines.raw();
    if (row.size() != source)
      parse_fail(row_line, "expected " + std::to_string(source) +
                               " characters of 0/1");
    for (std::size_t x = 0; x < source; ++x) {
      if (row[x] == '1')
        out.set(y, x);
      else if (row[x] != '0')
        parse_fail(row_line, "expected only 0/1 characters");
    }
  }
  return out;
}

Matrix parse_matrix_body(Lines& lines, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto [row_line, row] = lines.raw();
    const std::vector<std::string> words = split_words(row);
    if (words.size() != cols)
      parse_fail(row_line,
                 "expected " + std::to_string(cols) + " entries, got " +
                     std::to_string(words.size()));
    for (std::size_t j = 0; j < cols; ++j)
      out.at(i, j) = parse_rational(words[j], row_line);
  }
  return out;
}

}  // namespace

Correspondence parse_correspondence_text(const std::string& text) {
  Lines lines(text);
  Correspondence out = parse_correspondence_body(lines);
  if (!lines.directive_done()) {
    const auto [line, extra] = lines.directive();
    parse_fail(line, "unexpected trailing content: " + extra);
  }
  return out;
}

Lattice parse_lattice_text(const std::string& text) {
  Lines lines(text);
  const auto [header_line, header] = lines.directive();
  const std::vector<std::string> head = split_words(header);
  if (head.size() != 2 || head[0] != "lattice")
    parse_fail(header_line, "expected 'lattice <size>'");
  const std::size_t size = parse_count(head[1], header_line);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  while (!lines.directive_done()) {
    const auto [line, text_line] = lines.directive();
    const std::vector<std::string> words = split_words(text_line);
    if (words.size() != 3 || words[0] != "cover")
      parse_fail(line, "expected 'cover <a> <b>'");
    const std::size_t a = parse_count(words[1], line);
    const std::size_t b = parse_count(words[2], line);
    if (a >= size || b >= size) parse_fail(line, "cover element out of range");
    covers.emplace_back(a, b);
  }
  return Lattice::from_covers(size, covers);
}

AlgebraFunctorRep parse_algebra_text(const std::string& text,
                                     const VerifyPolicy& policy) {
  Lines lines(text);
  const auto [first_line, first] = lines.directive();
  if (first != "algebra") parse_fail(first_line, "expected 'algebra'");

  const auto [dims_line, dims_text] = lines.directive();
  const std::vector<std::string> dims_words = split_words(dims_text);
  if (dims_words.size() != 4 || dims_words[0] != "dims")
    parse_fail(dims_line, "expected 'dims <d0> <d1> <d2>'");
  std::vector<std::size_t> dims;
  for (int n = 0; n < 3; ++n) {
    const std::size_t d =
        parse_count(dims_words[static_cast<std::size_t>(n) + 1], dims_line);
    if (d == 0 || d > 256) parse_fail(dims_line, "dimensions must be 1..256");
    dims.push_back(d);
  }

  std::vector<std::optional<Vec>> units(3);
  std::vector<std::optional<Matrix>> mul(3);
  std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, Matrix>
      actions;
  auto size_index = [&](const std::string& word, std::size_t line) {
    const std::size_t n = parse_count(word, line);
    if (n > 2) parse_fail(line, "size must be 0, 1 or 2");
    return n;
  };

  while (!lines.directive_done()) {
    const auto [line, head_text] = lines.directive();
    const std::vector<std::string> words = split_words(head_text);
    if (words.size() == 2 && words[0] == "unit") {
      const std::size_t n = size_index(words[1], line);
      if (units[n]) parse_fail(line, "duplicate unit block");
      const Matrix row = parse_matrix_body(lines, 1, dims[n]);
      Vec u(dims[n]);
      for (std::size_t j = 0; j < dims[n]; ++j) u[j] = row.at(0, j);
      units[n] = std::move(u);
    } else if (words.size() == 2 && words[0] == "mul") {
      const std::size_t n = size_index(words[1], line);
      if (mul[n]) parse_fail(line, "duplicate mul block");
      mul[n] = parse_matrix_body(lines, dims[n], dims[n] * dims[n]);
    } else if (words.size() == 1 && words[0] == "action") {
      const Correspondence u = parse_correspondence_body(lines);
      const std::size_t y = u.target_size(), x = u.source_size();
      if (y > 2 || x > 2) parse_fail(line, "action sets must have size <= 2");
      const Matrix m = parse_matrix_body(lines, dims[y], dims[x]);
      const auto key = std::make_tuple(y, x, u.index());
      const auto found = actions.find(key);
      if (found != actions.end() && !(found->second == m))
        parse_fail(line, "conflicting action for " + u.to_text());
      actions.emplace(key, m);
    } else {
      parse_fail(line, "expected 'unit <n>', 'mul <n>' or 'action'");
    }
  }

  for (std::size_t n = 0; n < 3; ++n) {
    require(units[n].has_value(), Errc::parse,
            "missing unit block for size " + std::to_string(n));
    require(mul[n].has_value(), Errc::parse,
            "missing mul block for size " + std::to_string(n));
  }

  // identities act as identity matrices; reject contradictions up front
  for (std::size_t n = 0; n <= 2; ++n) {
    const Correspondence id = Correspondence::identity(n);
    const auto key = std::make_tuple(n, n, id.index());
    const auto found = actions.find(key);
    if (found != actions.end())
      require(found->second == Matrix::identity(dims[n]), Errc::parse,
              "identity correspondence must act as the identity matrix");
    actions.emplace(key, Matrix::identity(dims[n]));
  }

  // close the generating list under composition; map insertion keeps
  // iterators valid, so newly generated actions join the same pass
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& outer : actions) {
      const auto [oy, ox, oi] = outer.first;
      const Correspondence v = Correspondence::from_index(oy, ox, oi);
      for (const auto& inner : actions) {
        const auto [iy, ix, ii] = inner.first;
        if (iy != ox) continue;
        const Correspondence u = Correspondence::from_index(iy, ix, ii);
        const Correspondence w = compose(v, u);
        const Matrix m = outer.second * inner.second;
        const auto key = std::make_tuple(oy, ix, w.index());
        const auto found = actions.find(key);
        if (found == actions.end()) {
          actions.emplace(key, m);
          progress = true;
        } else {
          require(found->second == m, Errc::parse,
                  "generated actions are inconsistent at " + w.to_text());
        }
      }
    }
  }

  for (std::size_t y = 0; y <= 2; ++y)
    for (std::size_t x = 0; x <= 2; ++x)
      require(static_cast<std::uint64_t>(std::count_if(
                  actions.begin(), actions.end(),
                  [&](const auto& kv) {
                    return std::get<0>(kv.first) == y &&
                           std::get<1>(kv.first) == x;
                  })) == correspondence_count(y, x),
              Errc::parse,
              "the listed actions do not generate every correspondence "
              "between sets of sizes " +
                  std::to_string(x) + " and " + std::to_string(y));

  std::vector<std::vector<std::string>> labels(3);
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t i = 0; i < dims[n]; ++i)
      labels[n].push_back(std::to_string(i));
  auto table = std::make_shared<
      std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, Matrix>>(
      std::move(actions));
  FunctorRep carrier(
      2, dims, labels, [table](const Correspondence& u) {
        const auto found = table->find(std::make_tuple(
            u.target_size(), u.source_size(), u.index()));
        require(found != table->end(), Errc::internal, "action not generated");
        return found->second;
      });
  std::vector<Matrix> mul_tables;
  std::vector<Vec> unit_vecs;
  for (std::size_t n = 0; n <= 2; ++n) {
    mul_tables.push_back(std::move(*mul[n]));
    unit_vecs.push_back(std::move(*units[n]));
  }
  return AlgebraFunctorRep(std::move(carrier), std::move(mul_tables),
                           std::move(unit_vecs), policy);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), Errc::io, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  require(static_cast<bool>(in) || in.eof(), Errc::io, "cannot read " + path);
  return out.str();
}

Lattice resolve_lattice_input(const std::string& spec) {
  const std::vector<std::string>& names = lattice_corpus_names();
  if (std::find(names.begin(), names.end(), spec) != names.end())
    return named_lattice(spec);
  return parse_lattice_text(read_file(spec));
}

AlgebraFunctorRep resolve_algebra_input(const std::string& spec, int bound,
                                        const VerifyPolicy& policy) {
  if (spec.rfind("ft:", 0) == 0)
    return algebra_ft(resolve_lattice_input(spec.substr(3)), bound, policy);
  return parse_algebra_text(read_file(spec), policy);
}

}  // namespace corrfun
