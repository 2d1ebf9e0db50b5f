#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace fqw {

// Renders z as "re+imi" with 12 significant digits. Values with |z| below
// the zero threshold print as "0~" so exact block zeros stay auditable.
std::string format_complex(std::complex<double> z, double zero_threshold = 1e-12);

// Scientific form "%.12e%+.12ei", used by the scatter output.
std::string format_complex_sci(std::complex<double> z);

// Parses complex literals: "1.5", "-2i", "0.5+0.866i", "1e-3-2.0e-1i".
std::complex<double> parse_complex(std::string_view text);

// Parses a unit complex number spec: a complex literal ("1", "-1", "0+1i"),
// a value in degrees with a "deg" suffix ("90deg"), or "exp(i*pi*p/q)".
// Rejects values off the unit circle (tolerance 1e-9).
std::complex<double> parse_unit_complex(std::string_view text);

}  // namespace fqw
