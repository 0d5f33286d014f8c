#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "qmpc/circuit.hpp"

namespace qmpc {

/// Parse failure with source position.
class QasmError : public std::runtime_error {
  public:
    QasmError(int line, int col, const std::string& what);
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

/// Parses the OpenQASM 2.0 subset used by the bundled benchmarks: a single
/// qreg, optional creg, the fixed gate vocabulary, measure and barrier.
/// Angle expressions may use literals, `pi`, parentheses and + - * /.
Circuit parse_qasm(const std::string& text, const std::string& name = "");

/// Reads and parses a .qasm file; the circuit name defaults to the file stem.
Circuit parse_qasm_file(const std::filesystem::path& path);

/// Emits the circuit as OpenQASM 2.0. Angles are printed with enough digits
/// for an exact double round trip. `header_comment` lines (if any) are
/// prefixed with "// " at the top.
std::string emit_qasm(const Circuit& c, const std::vector<std::string>& header_comment = {});

}  // namespace qmpc
