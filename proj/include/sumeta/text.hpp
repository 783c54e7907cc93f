#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sumeta {

using TokenSequence = std::vector<std::string>;

struct TokenizerConfig {
    bool lowercase = true;
    bool stem = false;
};

namespace detail {

// Porter's suffix-stripping algorithm (1980), original rule list.
// Operates on words made of lowercase ASCII letters; words of one or two
// letters are returned unchanged.
class PorterStemmer {
public:
    std::string stem(std::string word) {
        if (word.size() <= 2) return word;
        b_ = std::move(word);
        k_ = static_cast<int>(b_.size()) - 1;
        j_ = 0;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        b_.resize(static_cast<std::size_t>(k_) + 1);
        return std::move(b_);
    }

private:
    std::string b_;
    int k_ = 0; // last index of the current word
    int j_ = 0; // last index of the stem a rule applies to

    bool cons(int i) const {
        switch (b_[static_cast<std::size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 ? true : !cons(i - 1);
            default: return true;
        }
    }

    // Number of vowel-consonant sequences in [0, j].
    int m() const {
        int n = 0, i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool doublec(int i) const {
        if (i < 1) return false;
        if (b_[static_cast<std::size_t>(i)] != b_[static_cast<std::size_t>(i) - 1]) return false;
        return cons(i);
    }

    // consonant-vowel-consonant ending where the final consonant is not
    // w, x or y; signals stems like hop-, fil- that restore a final e.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s) {
        int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ - len + 1), static_cast<std::size_t>(len), s) != 0)
            return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_ = b_.substr(0, static_cast<std::size_t>(j_) + 1);
        b_ += s;
        k_ = static_cast<int>(b_.size()) - 1;
    }

    void replace_if_measure(std::string_view s) {
        if (m() > 0) set_to(s);
    }

    void chop() {
        --k_;
        b_.resize(static_cast<std::size_t>(k_) + 1);
    }

    void truncate_to_stem() {
        k_ = j_;
        b_.resize(static_cast<std::size_t>(k_) + 1);
    }

    void step1a() {
        if (b_[static_cast<std::size_t>(k_)] != 's') return;
        if (ends("sses")) set_to("ss");
        else if (ends("ies")) set_to("i");
        else if (k_ >= 1 && b_[static_cast<std::size_t>(k_) - 1] != 's') chop();
    }

    void step1b() {
        if (ends("eed")) {
            if (m() > 0) chop();
            return;
        }
        bool stripped = false;
        if (ends("ed") && vowel_in_stem()) {
            truncate_to_stem();
            stripped = true;
        } else if (ends("ing") && vowel_in_stem()) {
            truncate_to_stem();
            stripped = true;
        }
        if (!stripped) return;
        if (ends("at")) set_to("ate");
        else if (ends("bl")) set_to("ble");
        else if (ends("iz")) set_to("ize");
        else if (doublec(k_)) {
            char ch = b_[static_cast<std::size_t>(k_)];
            if (ch != 'l' && ch != 's' && ch != 'z') chop();
        } else {
            j_ = k_;
            if (m() == 1 && cvc(k_)) set_to("e");
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void step2() {
        switch (b_[static_cast<std::size_t>(k_) - 1]) {
            case 'a':
                if (ends("ational")) { replace_if_measure("ate"); break; }
                if (ends("tional")) { replace_if_measure("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { replace_if_measure("ence"); break; }
                if (ends("anci")) { replace_if_measure("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { replace_if_measure("ize"); break; }
                break;
            case 'l':
                if (ends("abli")) { replace_if_measure("able"); break; }
                if (ends("alli")) { replace_if_measure("al"); break; }
                if (ends("entli")) { replace_if_measure("ent"); break; }
                if (ends("eli")) { replace_if_measure("e"); break; }
                if (ends("ousli")) { replace_if_measure("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { replace_if_measure("ize"); break; }
                if (ends("ation")) { replace_if_measure("ate"); break; }
                if (ends("ator")) { replace_if_measure("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { replace_if_measure("al"); break; }
                if (ends("iveness")) { replace_if_measure("ive"); break; }
                if (ends("fulness")) { replace_if_measure("ful"); break; }
                if (ends("ousness")) { replace_if_measure("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { replace_if_measure("al"); break; }
                if (ends("iviti")) { replace_if_measure("ive"); break; }
                if (ends("biliti")) { replace_if_measure("ble"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[static_cast<std::size_t>(k_)]) {
            case 'e':
                if (ends("icate")) { replace_if_measure("ic"); break; }
                if (ends("ative")) { replace_if_measure(""); break; }
                if (ends("alize")) { replace_if_measure("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { replace_if_measure("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { replace_if_measure("ic"); break; }
                if (ends("ful")) { replace_if_measure(""); break; }
                break;
            case 's':
                if (ends("ness")) { replace_if_measure(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        bool matched = false;
        switch (b_[static_cast<std::size_t>(k_) - 1]) {
            case 'a': matched = ends("al"); break;
            case 'c': matched = ends("ance") || ends("ence"); break;
            case 'e': matched = ends("er"); break;
            case 'i': matched = ends("ic"); break;
            case 'l': matched = ends("able") || ends("ible"); break;
            case 'n': matched = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
            case 'o':
                if (ends("ion"))
                    matched = j_ >= 0 && (b_[static_cast<std::size_t>(j_)] == 's' ||
                                          b_[static_cast<std::size_t>(j_)] == 't');
                else
                    matched = ends("ou");
                break;
            case 's': matched = ends("ism"); break;
            case 't': matched = ends("ate") || ends("iti"); break;
            case 'u': matched = ends("ous"); break;
            case 'v': matched = ends("ive"); break;
            case 'z': matched = ends("ize"); break;
            default: break;
        }
        if (matched && m() > 1) truncate_to_stem();
    }

    void step5a() {
        j_ = k_;
        if (b_[static_cast<std::size_t>(k_)] == 'e') {
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) chop();
        }
    }

    void step5b() {
        j_ = k_;
        if (m() > 1 && doublec(k_) && b_[static_cast<std::size_t>(k_)] == 'l') chop();
    }
};

inline bool ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool all_lower_alpha(const std::string& s) {
    for (char c : s)
        if (c < 'a' || c > 'z') return false;
    return true;
}

} // namespace detail

// Deterministic word tokenizer shared by all lexical metrics.
//
// Rules, applied to UTF-8 input:
//   * ASCII letters and digits are word characters; bytes >= 0x80
//     (all non-ASCII codepoints) are kept as word characters too;
//     every other byte, whitespace and punctuation alike, separates tokens.
//   * lowercase folds ASCII A-Z only.
//   * stem applies the Porter algorithm to tokens made purely of
//     lowercase ASCII letters; tokens with digits or non-ASCII bytes
//     pass through unchanged.
inline TokenSequence tokenize(std::string_view text, const TokenizerConfig& config = {}) {
    TokenSequence tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (config.stem && detail::all_lower_alpha(current))
            current = detail::PorterStemmer{}.stem(std::move(current));
        tokens.push_back(std::move(current));
        current.clear();
    };
    for (unsigned char c : text) {
        if (detail::ascii_alnum(c) || c >= 0x80) {
            if (config.lowercase && c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

} // namespace sumeta
