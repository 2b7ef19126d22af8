#include "gorhom/matrix.hpp"

#include <cctype>
#include <stdexcept>

namespace gorhom {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw std::invalid_argument("Matrix: entry count does not match shape");
  if (ring_.is_finite())
    for (auto& e : entries_) e = ring_.reduce(e);
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::diagonal(const Ring& ring, const std::vector<Int>& diag) {
  Matrix m(ring, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

Matrix Matrix::column_vector(const Ring& ring, std::vector<Int> values) {
  const std::size_t n = values.size();
  return Matrix(ring, n, 1, std::move(values));
}

namespace {

struct BracketParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  void expect(char c) {
    skip();
    if (pos >= s.size() || s[pos] != c)
      throw std::invalid_argument("matrix literal: expected '" + std::string(1, c) + "' at offset " +
                                  std::to_string(pos));
    ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  Int integer() {
    skip();
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string tok = s.substr(start, pos - start);
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    if (tok.empty() || tok == "-")
      throw std::invalid_argument("matrix literal: expected integer at offset " + std::to_string(start));
    return Int(tok);
  }
};

}  // namespace

Matrix Matrix::parse(const Ring& ring, const std::string& text) {
  BracketParser p{text};
  std::vector<std::vector<Int>> rows;
  p.expect('[');
  if (!p.peek(']')) {
    do {
      p.expect('[');
      std::vector<Int> row;
      if (!p.peek(']')) {
        do {
          row.push_back(p.integer());
        } while (p.peek(',') && (p.expect(','), true));
      }
      p.expect(']');
      rows.push_back(std::move(row));
    } while (p.peek(',') && (p.expect(','), true));
  }
  p.expect(']');
  p.skip();
  if (p.pos != text.size()) throw std::invalid_argument("matrix literal: trailing text at offset " + std::to_string(p.pos));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Int> entries;
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("matrix literal: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(ring, rows.size(), cols, std::move(entries));
}

void Matrix::add_to(std::size_t i, std::size_t j, const Int& v) {
  Int& e = entries_[i * cols_ + j];
  e += v;
  if (ring_.is_finite()) e = ring_.reduce(e);
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = at(i, j);
  return t;
}

Matrix Matrix::column(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix::block");
  Matrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.entries_[i * nc + j] = at(r0 + i, c0 + j);
  return b;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix b(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b.entries_[i * idx.size() + j] = at(i, idx[j]);
  return b;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix b(ring_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b.entries_[i * cols_ + j] = at(idx[i], j);
  return b;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("Matrix::paste");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) entries_[(r0 + i) * cols_ + c0 + j] = ring_.reduce(b.at(i, j));
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
  Matrix c(a.ring_, a.rows_, a.cols_ + b.cols_);
  c.paste(0, 0, a);
  c.paste(0, a.cols_, b);
  return c;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vcat: column mismatch");
  Matrix c(a.ring_, a.rows_ + b.rows_, a.cols_);
  c.paste(0, 0, a);
  c.paste(a.rows_, 0, b);
  return c;
}

Matrix Matrix::dsum(const Matrix& a, const Matrix& b) {
  Matrix c(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  c.paste(0, 0, a);
  c.paste(a.rows_, a.cols_, b);
  return c;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
  Matrix c(ring_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Int& bkj = b.at(k, j);
        if (bkj != 0) c.entries_[i * b.cols_ + j] += aik * bkj;
      }
    }
  if (ring_.is_finite())
    for (auto& e : c.entries_) e = ring_.reduce(e);
  return c;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix sum: shape mismatch");
  Matrix c = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) c.entries_[i] = ring_.reduce(entries_[i] + b.entries_[i]);
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const { return *this + (-b); }

Matrix Matrix::operator-() const {
  Matrix c = *this;
  for (auto& e : c.entries_) e = ring_.reduce(-e);
  return c;
}

Matrix Matrix::scaled(const Int& k) const {
  Matrix c = *this;
  for (auto& e : c.entries_) e = ring_.reduce(e * k);
  return c;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += at(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace gorhom
