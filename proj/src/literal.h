#pragma once

// Value literal reading shared by the data, domain and CLI readers.

#include <optional>
#include <string_view>
#include <vector>

#include "lexer.h"
#include "relkit/value.h"

namespace relkit::detail {

/// Exact rational value of a decimal numeral such as "0.5" or "-12".
mpq_class exactDecimal(std::string_view text);

/// Correctly rounded binary64 for decimal, exponent or hex-float text.
double parseDouble(std::string_view text);

/// Reads one literal value; on failure appends a diagnostic and returns nullopt.
///   12  -3  577/408  8.1  1e-3  0x1.8p+0  sym  f(v, ...)  [v, ...]
/// Identifiers denote symbolic values; callers resolve declared constants.
std::optional<Value> readValue(TokenStream& ts, std::vector<Diagnostic>& diags);

}  // namespace relkit::detail
