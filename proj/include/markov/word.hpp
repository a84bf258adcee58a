#pragma once

#include <markov/scalar.hpp>
#include <string>
#include <vector>

namespace markov {

/// The three Vieta involutions generating Aut(M_D) as (Z/2)*(Z/2)*(Z/2).
enum class Letter { X, Y, Z };

inline char letter_char(Letter l) {
    switch (l) {
        case Letter::X: return 'x';
        case Letter::Y: return 'y';
        default: return 'z';
    }
}

/// Reduced word in the three involutions.  The rightmost letter is applied
/// first; the empty word is the identity.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(reduce(std::move(letters))) {}

    /// Parses a string over {x,y,z}; throws std::invalid_argument otherwise.
    static Word parse(const std::string& s) {
        std::vector<Letter> ls;
        ls.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case 'x': case 'X': ls.push_back(Letter::X); break;
                case 'y': case 'Y': ls.push_back(Letter::Y); break;
                case 'z': case 'Z': ls.push_back(Letter::Z); break;
                default: throw std::invalid_argument(std::string("bad word character: ") + c);
            }
        }
        return Word(std::move(ls));
    }

    static std::vector<Letter> reduce(std::vector<Letter> in) {
        std::vector<Letter> out;
        out.reserve(in.size());
        for (Letter l : in) {
            if (!out.empty() && out.back() == l)
                out.pop_back();  // each letter is its own inverse
            else
                out.push_back(l);
        }
        return out;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    /// Group inverse: letters reversed (each letter is an involution).
    Word inverse() const {
        std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
        return Word(std::move(rev));
    }

    /// Composition: (*this) after other, i.e. concatenation this ++ other.
    Word operator*(const Word& other) const {
        std::vector<Letter> cat = letters_;
        cat.insert(cat.end(), other.letters_.begin(), other.letters_.end());
        return Word(std::move(cat));
    }

    Word power(long k) const {
        Word base = k >= 0 ? *this : inverse();
        unsigned long n = k >= 0 ? k : -k;
        Word r;
        for (unsigned long i = 0; i < n; ++i) r = r * base;
        return r;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (Letter l : letters_) s += letter_char(l);
        return s;
    }

  private:
    std::vector<Letter> letters_;
};

}  // namespace markov
