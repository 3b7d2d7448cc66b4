#pragma once

#include <string>

namespace ck {

/// Answer of a semi-decision procedure. True and False are backed by a
/// certificate; Unknown means the budget ran out.
enum class Truth { True, False, Unknown };

/// Kleene conjunction: False dominates, then Unknown.
inline Truth operator&&(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
    return Truth::True;
}

inline Truth operator||(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
    return Truth::False;
}

inline Truth operator!(Truth a) {
    if (a == Truth::True) return Truth::False;
    if (a == Truth::False) return Truth::True;
    return Truth::Unknown;
}

inline std::string to_string(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "unknown";
    }
}

}  // namespace ck
