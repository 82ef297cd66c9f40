#pragma once

// The worked example programs, bundled with domains, modes and fixtures.

#include <optional>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/structure.h"
#include "relkit/transpile.h"

namespace relkit {

struct ExampleFixture {
    std::string name;  // file name, e.g. "expected.rdata"
    std::string text;
};

struct ExamplePack {
    std::string name;
    std::string programText;               // .rel
    std::string domainText;                // .dom
    std::optional<std::string> modeText;   // .modes
    std::vector<ExampleFixture> fixtures;  // .rdata

    /// Parsed program; throws FormatError when it does not validate.
    Program program() const;
    Structure structure(const Program& program) const;
    /// Throws Error("NoModes") when the pack has none.
    ModeTable modes(const Program& program) const;
    const ExampleFixture* fixture(std::string_view name) const;
};

/// evenOdd, sortSpec, sortMerge, deBruijn, newtonSqrt2.
std::vector<std::string> exampleNames();

/// Throws Error("UnknownExample").
ExamplePack loadExample(const std::string& name);

}  // namespace relkit
