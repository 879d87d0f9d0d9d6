#pragma once

#include <complex>
#include <cstdio>
#include <string>

// Number/text formatting shared by the report and table emitters.  All
// floating-point output goes through %.17g (17 significant digits, '.'
// decimal, locale-independent), so identical runs serialize identically.

namespace qmzv {

inline std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_e3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string json_complex(std::complex<double> v) {
    return "{\"re\":" + fmt_g17(v.real()) + ",\"im\":" + fmt_g17(v.imag()) + "}";
}

}  // namespace qmzv
