#include "relkit/stdlib.h"

#include <algorithm>

#include "relkit/errors.h"
#include "relkit/parser.h"
#include "stdlib_files.h"

namespace relkit {

std::vector<std::string> exampleNames() {
    return {"evenOdd", "sortSpec", "sortMerge", "deBruijn", "newtonSqrt2"};
}

ExamplePack loadExample(const std::string& name) {
    auto names = exampleNames();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw Error("UnknownExample", "no bundled example named '" + name + "'");
    ExamplePack pack;
    pack.name = name;
    const std::string prefix = name + "/";
    for (const auto& [path, text] : detail::stdlibFiles()) {
        if (!path.starts_with(prefix)) continue;
        std::string file(path.substr(prefix.size()));
        if (file == name + ".rel") pack.programText = text;
        else if (file == name + ".dom") pack.domainText = text;
        else if (file == name + ".modes") pack.modeText = std::string(text);
        else if (file.ends_with(".rdata")) pack.fixtures.push_back({file, std::string(text)});
    }
    return pack;
}

Program ExamplePack::program() const {
    auto outcome = parseProgram(programText, name + ".rel");
    if (!outcome.ok()) throw FormatError(outcome.diagnostics);
    return std::move(outcome.program);
}

Structure ExamplePack::structure(const Program& program) const {
    return parseStructure(domainText, program.signature(), name + ".dom");
}

ModeTable ExamplePack::modes(const Program& program) const {
    if (!modeText) throw Error("NoModes", "example '" + name + "' has no mode declarations");
    return parseModes(*modeText, program.signature(), name + ".modes");
}

const ExampleFixture* ExamplePack::fixture(std::string_view file) const {
    for (const auto& f : fixtures)
        if (f.name == file) return &f;
    return nullptr;
}

}  // namespace relkit
