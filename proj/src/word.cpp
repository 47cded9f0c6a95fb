#include "yf/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace yf {

Word::Word(int r, std::vector<std::uint8_t> syms) : r_(r), s_(std::move(syms)) {
  if (r < 1) throw std::invalid_argument("Word: r must be >= 1");
  for (std::uint8_t c : s_)
    if (c > r) throw std::invalid_argument("Word: unit index out of range");
}

int Word::weight() const {
  int w = 0;
  for (std::uint8_t c : s_) w += (c == kTwo) ? 2 : 1;
  return w;
}

int Word::units() const {
  return static_cast<int>(std::count_if(s_.begin(), s_.end(),
                                        [](std::uint8_t c) { return c != kTwo; }));
}

int Word::twos() const { return length() - units(); }

int Word::leftmost_unit() const {
  for (int i = 0; i < length(); ++i)
    if (s_[static_cast<std::size_t>(i)] != kTwo) return i;
  return -1;
}

Word parse_word(const std::string& text, int r) {
  if (r < 1) throw parse_error("parse_word: r must be >= 1");
  std::vector<std::uint8_t> syms;
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))))
      ++i;
  };
  skip_sep();
  while (i < text.size()) {
    char c = text[i];
    if (c == '2') {
      syms.push_back(kTwo);
      ++i;
    } else if (c == '1') {
      ++i;
      long idx = 1;
      if (i < text.size() && text[i] == '_') {
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("parse_word: missing unit index after '1_'");
        idx = std::stol(text.substr(start, i - start));
      }
      if (idx < 1 || idx > r)
        throw parse_error("parse_word: unit index " + std::to_string(idx) +
                          " outside 1.." + std::to_string(r));
      syms.push_back(static_cast<std::uint8_t>(idx));
    } else {
      throw parse_error(std::string("parse_word: unexpected character '") + c + "'");
    }
    std::size_t before = i;
    skip_sep();
    if (i < text.size() && i == before)
      throw parse_error("parse_word: missing separator between tokens");
  }
  return Word(r, std::move(syms));
}

std::vector<std::string> word_tokens(const Word& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.length()));
  for (int i = 0; i < v.length(); ++i) {
    std::uint8_t c = v.sym(i);
    if (c == kTwo)
      out.push_back("2");
    else if (v.r() == 1)
      out.push_back("1");
    else
      out.push_back("1_" + std::to_string(int(c)));
  }
  return out;
}

std::string format_word(const Word& v) {
  std::string out;
  auto toks = word_tokens(v);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ',';
    out += toks[i];
  }
  return out;
}

WordStats stats(const Word& v) { return {v.weight(), v.length(), v.units(), v.twos()}; }

Word forget_indices(const Word& v) {
  std::vector<std::uint8_t> syms(v.syms());
  for (auto& c : syms)
    if (c != kTwo) c = 1;
  return Word(1, std::move(syms));
}

Word strip_suffix(const Word& v, int l) {
  if (l < 0 || l > v.length()) throw std::out_of_range("strip_suffix: l out of range");
  std::vector<std::uint8_t> syms(v.syms().begin(), v.syms().end() - l);
  return Word(v.r(), std::move(syms));
}

namespace {
// Position of the l-th-from-the-right Unit (l >= 1), or -1.
int unit_pos_from_right(const Word& v, int l) {
  int seen = 0;
  for (int i = v.length() - 1; i >= 0; --i) {
    if (v.is_unit(i) && ++seen == l) return i;
  }
  return -1;
}
}  // namespace

Word strip_from_unit(const Word& v, int l) {
  if (l == 0) return v;
  int p = unit_pos_from_right(v, l);
  if (l < 0 || p < 0) throw std::out_of_range("strip_from_unit: l out of range");
  std::vector<std::uint8_t> syms(v.syms().begin(), v.syms().begin() + p);
  return Word(v.r(), std::move(syms));
}

Word suffix_from_unit(const Word& v, int l) {
  if (l == 0) return Word(v.r(), {});
  int p = unit_pos_from_right(v, l);
  if (l < 0 || p < 0) throw std::out_of_range("suffix_from_unit: l out of range");
  std::vector<std::uint8_t> syms(v.syms().begin() + p, v.syms().end());
  return Word(v.r(), std::move(syms));
}

Word bump_unit(const Word& v, int l) {
  int p = unit_pos_from_right(v, l);
  if (l < 1 || p < 0) throw std::out_of_range("bump_unit: l out of range");
  std::vector<std::uint8_t> syms(v.syms());
  syms[static_cast<std::size_t>(p)] = kTwo;
  return Word(v.r(), std::move(syms));
}

Word concat(const Word& a, const Word& b) {
  if (a.r() != b.r()) throw std::invalid_argument("concat: mixed r");
  std::vector<std::uint8_t> syms(a.syms());
  syms.insert(syms.end(), b.syms().begin(), b.syms().end());
  return Word(a.r(), std::move(syms));
}

SuffixRelation common_suffix(const Word& w, const Word& v) {
  if (w.r() != v.r()) throw std::invalid_argument("common_suffix: mixed r");
  int h = 0;
  int max_h = std::min(w.length(), v.length());
  while (h < max_h && w.sym(w.length() - 1 - h) == v.sym(v.length() - 1 - h)) ++h;
  SuffixRelation rel;
  rel.h = h;
  rel.e_common = 0;
  for (int i = 0; i < h; ++i)
    if (w.is_unit(w.length() - 1 - i)) ++rel.e_common;
  rel.w_stripped = strip_suffix(w, h);
  rel.v_stripped = strip_suffix(v, h);
  const Word& a = rel.w_stripped;
  const Word& b = rel.v_stripped;
  rel.indicator = (!a.empty() && !b.empty() && a.sym(a.length() - 1) != kTwo &&
                   b.sym(b.length() - 1) != kTwo &&
                   a.sym(a.length() - 1) != b.sym(b.length() - 1))
                      ? 1
                      : 0;
  return rel;
}

}  // namespace yf
