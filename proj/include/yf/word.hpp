#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "yf/numbers.hpp"

namespace yf {

// Symbols are bytes: 0 encodes a Two (weight 2); 1..r encode Unit(i) (weight 1,
// index i).  This makes the canonical order Two < Unit(1) < ... < Unit(r) the
// plain byte order.  Symbol 0 in a word is leftmost-first.
inline constexpr std::uint8_t kTwo = 0;

class Word {
 public:
  Word() : r_(1) {}
  Word(int r, std::vector<std::uint8_t> syms);

  int r() const { return r_; }
  int length() const { return static_cast<int>(s_.size()); }  // #v
  int weight() const;                                         // |v|
  int units() const;                                          // e(v)
  int twos() const;                                           // d(v)
  bool empty() const { return s_.empty(); }

  std::uint8_t sym(int i) const { return s_[static_cast<std::size_t>(i)]; }
  bool is_unit(int i) const { return sym(i) != kTwo; }
  const std::vector<std::uint8_t>& syms() const { return s_; }

  // Position of the leftmost Unit, or -1 if the word is all Twos.
  int leftmost_unit() const;

  // Byte string usable as a hash-map key (r not included; keys are only
  // compared within a fixed ambient r).
  std::string key() const { return std::string(s_.begin(), s_.end()); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.r_ == b.r_ && a.s_ == b.s_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) { return a.s_ < b.s_; }

 private:
  int r_;
  std::vector<std::uint8_t> s_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t c : w.syms()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h ^ static_cast<std::size_t>(w.r());
  }
};

struct WordStats {
  int weight;
  int length;
  int units;
  int twos;
};

struct SuffixRelation {
  int h;            // longest common suffix length (indices must match)
  int e_common;     // Units inside that suffix
  Word w_stripped;  // w minus the suffix
  Word v_stripped;  // v minus the suffix
  int indicator;    // 1 iff both stripped words end in Units of different index
};

// Tokens "2", "1", "1_i", separated by commas and/or whitespace, leftmost
// symbol first; the empty string is the empty word.
Word parse_word(const std::string& text, int r);
std::string format_word(const Word& v);
std::vector<std::string> word_tokens(const Word& v);

WordStats stats(const Word& v);

Word forget_indices(const Word& v);  // s(v): every Unit index becomes 1, r=1

// v[l]: drop the last l symbols.
Word strip_suffix(const Word& v, int l);

// v{l}: drop the suffix that starts at the l-th-from-the-right Unit (l = 0
// keeps everything).  suffix_from_unit returns the dropped part, so
// v == strip_from_unit(v,l) ++ suffix_from_unit(v,l).
Word strip_from_unit(const Word& v, int l);
Word suffix_from_unit(const Word& v, int l);

// Replace the l-th-from-the-right Unit with a Two (weight grows by 1).
Word bump_unit(const Word& v, int l);

Word concat(const Word& a, const Word& b);

SuffixRelation common_suffix(const Word& w, const Word& v);

}  // namespace yf
