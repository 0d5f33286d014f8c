#include "qmpc/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmpc {

QasmError::QasmError(int line, int col, const std::string& what)
    : std::runtime_error("qasm:" + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
      line_(line),
      col_(col) {}

namespace {

struct Token {
    enum Kind { Ident, Number, Symbol, String, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_blank();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Token::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                bump();
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    bump();
            }
            tok_.kind = Token::Number;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (c == '"') {
            bump();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') bump();
            if (pos_ >= src_.size()) throw QasmError(tok_.line, tok_.col, "unterminated string");
            tok_.kind = Token::String;
            tok_.text = src_.substr(start, pos_ - start);
            bump();
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            tok_.kind = Token::Symbol;
            tok_.text = "->";
            bump();
            bump();
            return;
        }
        tok_.kind = Token::Symbol;
        tok_.text = std::string(1, c);
        bump();
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    Parser(const std::string& src, std::string name) : lex_(src) { circ_.name = std::move(name); }

    Circuit run() {
        expect_ident("OPENQASM");
        Token v = expect(Token::Number, "version number");
        if (v.text != "2.0") throw QasmError(v.line, v.col, "unsupported OPENQASM version " + v.text);
        expect_symbol(";");
        while (lex_.peek().kind != Token::End) statement();
        if (qreg_.empty()) throw QasmError(lex_.peek().line, lex_.peek().col, "missing qreg declaration");
        circ_.validate();
        return circ_;
    }

  private:
    void statement() {
        Token t = lex_.next();
        if (t.kind != Token::Ident) throw QasmError(t.line, t.col, "expected statement");
        if (t.text == "include") {
            expect(Token::String, "include path");
            expect_symbol(";");
            return;
        }
        if (t.text == "qreg" || t.text == "creg") {
            declare_register(t);
            return;
        }
        if (t.text == "measure") {
            parse_measure(t);
            return;
        }
        if (t.text == "barrier") {
            parse_barrier();
            return;
        }
        parse_gate(t);
    }

    void declare_register(const Token& kw) {
        Token name = expect(Token::Ident, "register name");
        expect_symbol("[");
        Token sz = expect(Token::Number, "register size");
        expect_symbol("]");
        expect_symbol(";");
        int n = to_int(sz);
        if (n < 1) throw QasmError(sz.line, sz.col, "register size must be positive");
        if (kw.text == "qreg") {
            if (!qreg_.empty()) throw QasmError(kw.line, kw.col, "qreg redeclared");
            qreg_ = name.text;
            circ_.num_qubits = n;
        } else {
            if (!creg_.empty()) throw QasmError(kw.line, kw.col, "creg redeclared");
            creg_ = name.text;
            creg_size_ = n;
        }
    }

    void parse_measure(const Token& kw) {
        auto qubits = qubit_args(kw, true);
        expect_symbol("->");
        Token reg = expect(Token::Ident, "classical register");
        if (reg.text != creg_) throw QasmError(reg.line, reg.col, "unknown register " + reg.text);
        if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "[") {
            lex_.next();
            Token idx = expect(Token::Number, "classical index");
            expect_symbol("]");
            int c = to_int(idx);
            if (c < 0 || c >= creg_size_) throw QasmError(idx.line, idx.col, "classical index out of range");
            if (qubits.size() != 1) throw QasmError(kw.line, kw.col, "register measure needs register target");
        } else if (qubits.size() != static_cast<size_t>(creg_size_)) {
            throw QasmError(kw.line, kw.col, "register sizes differ in measure");
        }
        expect_symbol(";");
        for (int q : qubits) {
            circ_.gates.push_back({GateKind::Measure, {q}, {}});
            circ_.measured_qubits.push_back(q);
        }
    }

    void parse_barrier() {
        Token kw;  // barrier already consumed; position info not needed further
        auto qubits = qubit_args(kw, true);
        expect_symbol(";");
        circ_.gates.push_back({GateKind::Barrier, qubits, {}});
    }

    void parse_gate(const Token& name) {
        auto kind = gate_from_name(name.text);
        if (!kind || *kind == GateKind::Measure || *kind == GateKind::Barrier)
            throw QasmError(name.line, name.col, "unsupported gate '" + name.text + "'");
        std::vector<double> params;
        if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "(") {
            lex_.next();
            params.push_back(expr());
            while (lex_.peek().kind == Token::Symbol && lex_.peek().text == ",") {
                lex_.next();
                params.push_back(expr());
            }
            expect_symbol(")");
        }
        if (static_cast<int>(params.size()) != gate_param_count(*kind))
            throw QasmError(name.line, name.col, "wrong parameter count for '" + name.text + "'");
        bool broadcast = gate_arity(*kind) == 1;
        auto qubits = qubit_args(name, broadcast);
        expect_symbol(";");
        if (gate_arity(*kind) == 1 && qubits.size() > 1) {
            for (int q : qubits) circ_.gates.push_back({*kind, {q}, params});
            return;
        }
        if (static_cast<int>(qubits.size()) != gate_arity(*kind))
            throw QasmError(name.line, name.col, "wrong operand count for '" + name.text + "'");
        circ_.gates.push_back({*kind, qubits, params});
    }

    // One or more qubit operands; a bare register name expands to all qubits
    // when `allow_register` is set.
    std::vector<int> qubit_args(const Token& at, bool allow_register) {
        std::vector<int> qubits;
        while (true) {
            Token reg = expect(Token::Ident, "qubit operand");
            if (reg.text != qreg_) throw QasmError(reg.line, reg.col, "unknown register " + reg.text);
            if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "[") {
                lex_.next();
                Token idx = expect(Token::Number, "qubit index");
                expect_symbol("]");
                int q = to_int(idx);
                if (q < 0 || q >= circ_.num_qubits)
                    throw QasmError(idx.line, idx.col, "qubit index out of range");
                qubits.push_back(q);
            } else {
                if (!allow_register)
                    throw QasmError(reg.line, reg.col, "whole-register operand not allowed here");
                for (int q = 0; q < circ_.num_qubits; ++q) qubits.push_back(q);
            }
            if (lex_.peek().kind == Token::Symbol && lex_.peek().text == ",") {
                lex_.next();
                continue;
            }
            break;
        }
        (void)at;
        return qubits;
    }

    double expr() { return add_expr(); }

    double add_expr() {
        double v = mul_expr();
        while (lex_.peek().kind == Token::Symbol &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            std::string op = lex_.next().text;
            double rhs = mul_expr();
            v = op == "+" ? v + rhs : v - rhs;
        }
        return v;
    }

    double mul_expr() {
        double v = unary_expr();
        while (lex_.peek().kind == Token::Symbol &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            std::string op = lex_.next().text;
            double rhs = unary_expr();
            v = op == "*" ? v * rhs : v / rhs;
        }
        return v;
    }

    double unary_expr() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Symbol && t.text == "-") {
            lex_.next();
            return -unary_expr();
        }
        if (t.kind == Token::Symbol && t.text == "(") {
            lex_.next();
            double v = add_expr();
            expect_symbol(")");
            return v;
        }
        if (t.kind == Token::Ident && t.text == "pi") {
            lex_.next();
            return M_PI;
        }
        if (t.kind == Token::Number) {
            Token num = lex_.next();
            return std::stod(num.text);
        }
        throw QasmError(t.line, t.col, "expected angle expression");
    }

    Token expect(Token::Kind kind, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != kind) throw QasmError(t.line, t.col, "expected " + what);
        return t;
    }

    void expect_symbol(const std::string& sym) {
        Token t = lex_.next();
        if (t.kind != Token::Symbol || t.text != sym)
            throw QasmError(t.line, t.col, "expected '" + sym + "'");
    }

    void expect_ident(const std::string& word) {
        Token t = lex_.next();
        if (t.kind != Token::Ident || t.text != word)
            throw QasmError(t.line, t.col, "expected '" + word + "'");
    }

    static int to_int(const Token& t) {
        if (t.text.find('.') != std::string::npos || t.text.find('e') != std::string::npos)
            throw QasmError(t.line, t.col, "expected integer");
        return std::stoi(t.text);
    }

    Lexer lex_;
    Circuit circ_;
    std::string qreg_;
    std::string creg_;
    int creg_size_ = 0;
};

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_qasm(const std::string& text, const std::string& name) {
    return Parser(text, name).run();
}

Circuit parse_qasm_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qasm(buf.str(), path.stem().string());
}

std::string emit_qasm(const Circuit& c, const std::vector<std::string>& header_comment) {
    std::ostringstream out;
    for (const std::string& line : header_comment) out << "// " << line << "\n";
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    if (!c.measured_qubits.empty()) out << "creg c[" << c.measured_qubits.size() << "];\n";
    int next_clbit = 0;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::Measure:
                out << "measure q[" << g.qubits[0] << "] -> c[" << next_clbit++ << "];\n";
                continue;
            case GateKind::Barrier:
                out << "barrier ";
                break;
            default:
                out << gate_name(g.kind);
                if (!g.params.empty()) {
                    out << "(";
                    for (size_t i = 0; i < g.params.size(); ++i) {
                        if (i) out << ",";
                        out << format_angle(g.params[i]);
                    }
                    out << ")";
                }
                out << " ";
                break;
        }
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out << ",";
            out << "q[" << g.qubits[i] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace qmpc
