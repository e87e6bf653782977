#pragma once

#include <optional>

#include "automata.hpp"
#include "automata_ops.hpp"

namespace langprime {

/// Which side a counterexample is missing from.
enum class MismatchSide {
    missing_from_language, ///< the word is in L1·L2 but not in L
    missing_from_product,  ///< the word is in L but not in L1·L2
};

inline const char* to_token(MismatchSide side) {
    return side == MismatchSide::missing_from_language ? "missing-from-L" : "missing-from-product";
}

struct ConcatEqVerdict {
    bool equal = false;
    /// Present iff not equal: shortest, then lexicographically least.
    std::optional<Word> counterexample;
    std::optional<MismatchSide> direction;
};

/// Does L(lang) = L(left)·L(right) hold? All three automata must share one
/// alphabet and denote finite languages.
inline ConcatEqVerdict concat_equiv(const Dfa& lang, const Dfa& left, const Dfa& right) {
    detail::require_same_alphabet(lang.alphabet(), left.alphabet());
    detail::require_same_alphabet(lang.alphabet(), right.alphabet());
    if (!is_finite(lang) || !is_finite(left) || !is_finite(right))
        throw InputError("concatenation equivalence is decided for finite languages only");

    Dfa product = determinize(concat(left, right));
    auto verdict = equivalent(lang, product);
    if (verdict.equal) return {true, std::nullopt, std::nullopt};

    MismatchSide side = accepts(lang, *verdict.counterexample)
                            ? MismatchSide::missing_from_product
                            : MismatchSide::missing_from_language;
    return {false, std::move(verdict.counterexample), side};
}

} // namespace langprime
