#include "anosov/word.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace anosov {

namespace {

constexpr std::array<std::string_view, kAlphabetSize> kNames = {"a1", "A1", "b1", "B1", "a2", "A2", "b2", "B2"};

} // namespace

std::string_view letter_name(Letter x) {
    if (x >= kAlphabetSize)
        throw std::invalid_argument("letter out of range");
    return kNames[x];
}

Word parse_word(std::string_view text) {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == '*' || ch == '.') {
            ++i;
            continue;
        }
        int gen;
        bool inv;
        switch (ch) {
        case 'a': gen = 0; inv = false; break;
        case 'A': gen = 0; inv = true; break;
        case 'b': gen = 1; inv = false; break;
        case 'B': gen = 1; inv = true; break;
        default: throw std::invalid_argument("unexpected character in word: " + std::string(text));
        }
        ++i;
        int index = -1;
        if (i < text.size() && (text[i] == '1' || text[i] == '2')) {
            index = text[i] - '1';
            ++i;
        } else if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
                   static_cast<unsigned char>(text[i + 1]) == 0x82 &&
                   (static_cast<unsigned char>(text[i + 2]) == 0x81 ||
                    static_cast<unsigned char>(text[i + 2]) == 0x82)) {
            index = static_cast<unsigned char>(text[i + 2]) - 0x81;
            i += 3;
        }
        if (index < 0)
            throw std::invalid_argument("letter missing subscript 1 or 2: " + std::string(text));
        w.letters.push_back(static_cast<Letter>(4 * index + 2 * gen + (inv ? 1 : 0)));
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string out;
    out.reserve(2 * w.size());
    for (Letter x : w.letters)
        out += letter_name(x);
    return out;
}

Word inverse(const Word& w) {
    Word r;
    r.letters.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        r.letters[i] = inverse_letter(w.letters[w.size() - 1 - i]);
    return r;
}

Word concat(const Word& u, const Word& v) {
    Word r = u;
    r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
    return r;
}

Word power(const Word& w, int k) {
    Word base = k < 0 ? inverse(w) : w;
    Word r;
    for (int i = 0; i < std::abs(k); ++i)
        r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
    return r;
}

Word free_reduce(const Word& w) {
    Word r;
    for (Letter x : w.letters) {
        if (!r.empty() && r.letters.back() == inverse_letter(x))
            r.letters.pop_back();
        else
            r.letters.push_back(x);
    }
    return r;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r.letters[lo] == inverse_letter(r.letters[hi - 1])) {
        ++lo;
        --hi;
    }
    return Word(std::vector<Letter>(r.letters.begin() + lo, r.letters.begin() + hi));
}

Word rotate(const Word& w, std::size_t start) {
    Word r = w;
    if (!w.empty())
        std::rotate(r.letters.begin(), r.letters.begin() + (start % w.size()), r.letters.end());
    return r;
}

Word least_rotation(const Word& w) {
    std::size_t n = w.size();
    if (n == 0)
        return w;
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t j = 0; j < n; ++j) {
            Letter x = w.letters[(s + j) % n], y = w.letters[(best + j) % n];
            if (x != y) {
                if (x < y)
                    best = s;
                break;
            }
        }
    }
    return rotate(w, best);
}

Word canonical_word(const Word& w) {
    Word c = cyclic_reduce(w);
    return std::min(least_rotation(c), least_rotation(inverse(c)));
}

bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w.letters[i] == inverse_letter(w.letters[i - 1]))
            return false;
    return true;
}

bool is_cyclically_reduced(const Word& w) {
    return is_freely_reduced(w) && (w.size() < 2 || w.letters.front() != inverse_letter(w.letters.back()));
}

bool is_primitive_power(const Word& w) {
    std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i)
            periodic = w.letters[i] == w.letters[i - p];
        if (periodic)
            return false;
    }
    return true;
}

} // namespace anosov
