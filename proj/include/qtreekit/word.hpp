#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qtreekit {

// Reduced word over a symmetric alphabet. Letter +i is generator i
// (1-based), -i its inverse. Printed as a, b, c, ... with upper case for
// inverses.
class Word {
 public:
  Word() = default;
  // Freely reduces the input.
  explicit Word(std::vector<int> letters);

  static Word generator(int index);
  static Word parse(std::string_view text);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(long exponent) const;
  std::string to_string() const;

  // Signed exponent sum of one generator.
  long exponent_sum(int generator) const;
  // Number of letters (either sign) of one generator.
  std::size_t letter_count(int generator) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() <=> b.length();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<int> letters_;
};

Word commutator(const Word& g, const Word& h);

// All reduced words of length <= radius over the first `generators`
// generators, in shortlex order.
std::vector<Word> word_ball(int generators, std::size_t radius);

}  // namespace qtreekit
