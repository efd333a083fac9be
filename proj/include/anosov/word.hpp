#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace anosov {

// Letters of the surface-group alphabet in the fixed order
// a1 < A1 < b1 < B1 < a2 < A2 < b2 < B2; the inverse of letter x is x ^ 1.
using Letter = std::uint8_t;

inline constexpr int kAlphabetSize = 8;
inline constexpr Letter a1 = 0, A1 = 1, b1 = 2, B1 = 3, a2 = 4, A2 = 5, b2 = 6, B2 = 7;

inline constexpr Letter inverse_letter(Letter x) { return static_cast<Letter>(x ^ 1); }

std::string_view letter_name(Letter x);

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> l) : letters(l) {}
    explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](std::size_t i) const { return letters[i]; }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters <=> b.letters; }
};

// Accepts "a1B1", "a1 B1" and subscript forms such as "a₁ B₁"; throws std::invalid_argument.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);
Word power(const Word& w, int k);
Word free_reduce(const Word& w);
// Free reduction followed by cancellation of inverse pairs across the ends.
Word cyclic_reduce(const Word& w);
Word rotate(const Word& w, std::size_t start);
Word least_rotation(const Word& w);
// Least rotation of the cyclic reduction of w and of its inverse.
Word canonical_word(const Word& w);
bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
// True when w is not a proper power of a shorter word.
bool is_primitive_power(const Word& w);

} // namespace anosov
