// Copyright 2026 The dqczne Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqc/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace dqc {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.type = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.type = Tok::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                    src_[pos_] == '.')) {
                t.text.push_back(src_[pos_]);
                advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            t.type = Tok::Number;
            bool seen_exp = false;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                    t.text.push_back(d);
                    advance();
                } else if ((d == 'e' || d == 'E') && !seen_exp) {
                    seen_exp = true;
                    t.text.push_back(d);
                    advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        t.text.push_back(src_[pos_]);
                        advance();
                    }
                } else {
                    break;
                }
            }
            return t;
        }
        if (c == '"') {
            t.type = Tok::String;
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                t.text.push_back(src_[pos_]);
                advance();
            }
            if (pos_ < src_.size() && src_[pos_] == '"') advance();
            return t;
        }
        t.type = Tok::Punct;
        if ((c == '-' && peek2() == '>') || (c == '=' && peek2() == '=')) {
            t.text = {c, peek2()};
            advance();
            advance();
            return t;
        }
        t.text = std::string(1, c);
        advance();
        return t;
    }

  private:
    char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

    void advance() {
        if (pos_ >= src_.size()) return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        for (;;) {
            while (pos_ < src_.size() &&
                   std::isspace(static_cast<unsigned char>(src_[pos_])))
                advance();
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Creg {
    std::string name;
    int size = 0;
    int offset = 0;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    ParseResult run() {
        parse_header();
        while (cur_.type != Tok::End) parse_statement();
        ParseResult result;
        result.diagnostics = std::move(diags_);
        if (result.diagnostics.empty()) {
            circuit_.data_qubits.resize(circuit_.num_qubits);
            for (int i = 0; i < circuit_.num_qubits; ++i) circuit_.data_qubits[i] = i;
            result.circuit = std::move(circuit_);
        }
        return result;
    }

  private:
    void advance() { cur_ = lex_.next(); }

    void error_here(const std::string &msg) { diags_.push_back({cur_.line, cur_.col, msg}); }

    void error_at(const Token &t, const std::string &msg) {
        diags_.push_back({t.line, t.col, msg});
    }

    // Skip to just past the next ';' (or EOF) so later statements still parse.
    void recover() {
        while (cur_.type != Tok::End && !(cur_.type == Tok::Punct && cur_.text == ";")) advance();
        if (cur_.type != Tok::End) advance();
    }

    bool expect_punct(const std::string &p) {
        if (cur_.type == Tok::Punct && cur_.text == p) {
            advance();
            return true;
        }
        error_here("expected '" + p + "'");
        return false;
    }

    bool parse_uint(int &out) {
        if (cur_.type != Tok::Number || cur_.text.find('.') != std::string::npos) {
            error_here("expected integer");
            return false;
        }
        out = std::atoi(cur_.text.c_str());
        advance();
        return true;
    }

    void parse_header() {
        if (cur_.type == Tok::Ident && cur_.text == "OPENQASM") {
            advance();
            if (cur_.type == Tok::Number && cur_.text == "2.0") {
                advance();
            } else {
                error_here("unsupported OPENQASM version (expected 2.0)");
                recover();
                return;
            }
            if (!expect_punct(";")) recover();
        } else {
            error_here("missing OPENQASM 2.0 header");
        }
    }

    // Returns -1 on error. `reg[idx]`
    int parse_qubit_operand() {
        if (cur_.type != Tok::Ident) {
            error_here("expected qubit operand");
            return -1;
        }
        Token name = cur_;
        advance();
        if (name.text != qreg_name_) {
            error_at(name, "unknown quantum register '" + name.text + "'");
            return -1;
        }
        if (!expect_punct("[")) return -1;
        int idx = 0;
        Token it = cur_;
        if (!parse_uint(idx)) return -1;
        if (!expect_punct("]")) return -1;
        if (idx < 0 || idx >= circuit_.num_qubits) {
            error_at(it, "qubit index out of range");
            return -1;
        }
        return idx;
    }

    // Returns global classical bit index, or -1 on error.
    int parse_clbit_operand() {
        if (cur_.type != Tok::Ident) {
            error_here("expected classical operand");
            return -1;
        }
        Token name = cur_;
        advance();
        const Creg *reg = find_creg(name.text);
        if (!reg) {
            error_at(name, "unknown classical register '" + name.text + "'");
            return -1;
        }
        if (!expect_punct("[")) return -1;
        int idx = 0;
        Token it = cur_;
        if (!parse_uint(idx)) return -1;
        if (!expect_punct("]")) return -1;
        if (idx < 0 || idx >= reg->size) {
            error_at(it, "classical bit index out of range");
            return -1;
        }
        return reg->offset + idx;
    }

    const Creg *find_creg(const std::string &name) const {
        for (const Creg &r : cregs_)
            if (r.name == name) return &r;
        return nullptr;
    }

    // number | pi, with optional leading sign and '*' '/' chaining.
    bool parse_angle(double &out) {
        double sign = 1.0;
        while (cur_.type == Tok::Punct && (cur_.text == "-" || cur_.text == "+")) {
            if (cur_.text == "-") sign = -sign;
            advance();
        }
        double value = 0.0;
        if (!parse_angle_primary(value)) return false;
        while (cur_.type == Tok::Punct && (cur_.text == "*" || cur_.text == "/")) {
            bool mul = cur_.text == "*";
            advance();
            double rhs = 0.0;
            if (!parse_angle_primary(rhs)) return false;
            if (!mul && rhs == 0.0) {
                error_here("division by zero in angle");
                return false;
            }
            value = mul ? value * rhs : value / rhs;
        }
        out = sign * value;
        return true;
    }

    bool parse_angle_primary(double &out) {
        if (cur_.type == Tok::Number) {
            out = std::atof(cur_.text.c_str());
            advance();
            return true;
        }
        if (cur_.type == Tok::Ident && cur_.text == "pi") {
            out = M_PI;
            advance();
            return true;
        }
        error_here("expected angle literal");
        return false;
    }

    void append_gate(const Token &at, Gate g) {
        try {
            circuit_.append(std::move(g));
        } catch (const std::exception &e) {
            error_at(at, e.what());
        }
    }

    void parse_statement() {
        if (cur_.type == Tok::Punct && cur_.text == ";") {
            advance();
            return;
        }
        if (cur_.type != Tok::Ident) {
            error_here("expected statement");
            recover();
            return;
        }
        Token head = cur_;
        const std::string &w = head.text;
        if (w == "include") {
            advance();
            if (cur_.type == Tok::String && cur_.text == "qelib1.inc") {
                advance();
                if (!expect_punct(";")) recover();
            } else {
                error_at(head, "unsupported include");
                recover();
            }
            return;
        }
        if (w == "qreg") {
            advance();
            parse_qreg(head);
            return;
        }
        if (w == "creg") {
            advance();
            parse_creg(head);
            return;
        }
        if (w == "if") {
            advance();
            parse_conditional(head);
            return;
        }
        if (w == "measure") {
            advance();
            int q = parse_qubit_operand();
            if (q < 0) {
                recover();
                return;
            }
            if (!expect_punct("->")) {
                recover();
                return;
            }
            int c = parse_clbit_operand();
            if (c < 0) {
                recover();
                return;
            }
            if (!expect_punct(";")) {
                recover();
                return;
            }
            append_gate(head, Gate::measure(q, c));
            return;
        }
        if (w == "reset") {
            advance();
            int q = parse_qubit_operand();
            if (q < 0 || !expect_punct(";")) {
                recover();
                return;
            }
            append_gate(head, Gate::reset(q));
            return;
        }
        if (auto g = parse_plain_gate(head); g.has_value()) {
            if (!expect_punct(";")) {
                recover();
                return;
            }
            append_gate(head, std::move(*g));
            return;
        }
        // parse_plain_gate reported the diagnostic (or this is an unknown word).
        if (!handled_unknown_) error_at(head, "unsupported construct '" + w + "'");
        handled_unknown_ = false;
        recover();
    }

    // h/x/z/t/tdg/rz/ry/cx/ccx applications. Consumes through the operand
    // list but not the ';'. Empty optional means failure (diagnostic issued
    // unless it was an unknown mnemonic).
    std::optional<Gate> parse_plain_gate(const Token &head) {
        const std::string &w = head.text;
        GateKind kind;
        bool has_angle = false;
        if (w == "h") kind = GateKind::H;
        else if (w == "x") kind = GateKind::X;
        else if (w == "z") kind = GateKind::Z;
        else if (w == "t") kind = GateKind::T;
        else if (w == "tdg") kind = GateKind::Tdg;
        else if (w == "rz") { kind = GateKind::Rz; has_angle = true; }
        else if (w == "ry") { kind = GateKind::Ry; has_angle = true; }
        else if (w == "cx") kind = GateKind::Cx;
        else if (w == "ccx") kind = GateKind::Ccx;
        else return std::nullopt;
        advance();
        handled_unknown_ = true;
        double angle = 0.0;
        if (has_angle) {
            if (!expect_punct("(")) return std::nullopt;
            if (!parse_angle(angle)) return std::nullopt;
            if (!expect_punct(")")) return std::nullopt;
        } else if (cur_.type == Tok::Punct && cur_.text == "(") {
            error_here("gate takes no parameters");
            return std::nullopt;
        }
        Gate g;
        g.kind = kind;
        g.angle = angle;
        int n = arity(kind);
        for (int i = 0; i < n; ++i) {
            if (i > 0 && !expect_punct(",")) return std::nullopt;
            int q = parse_qubit_operand();
            if (q < 0) return std::nullopt;
            g.qubits.push_back(q);
        }
        handled_unknown_ = false;
        return g;
    }

    void parse_qreg(const Token &head) {
        if (cur_.type != Tok::Ident) {
            error_here("expected register name");
            recover();
            return;
        }
        std::string name = cur_.text;
        advance();
        int size = 0;
        if (!expect_punct("[") || !parse_uint(size) || !expect_punct("]")) {
            recover();
            return;
        }
        if (!expect_punct(";")) {
            recover();
            return;
        }
        if (!qreg_name_.empty()) {
            error_at(head, "only one qreg is supported");
            return;
        }
        if (size <= 0) {
            error_at(head, "qreg size must be positive");
            return;
        }
        qreg_name_ = name;
        circuit_.num_qubits = size;
    }

    void parse_creg(const Token &head) {
        if (cur_.type != Tok::Ident) {
            error_here("expected register name");
            recover();
            return;
        }
        std::string name = cur_.text;
        advance();
        int size = 0;
        if (!expect_punct("[") || !parse_uint(size) || !expect_punct("]")) {
            recover();
            return;
        }
        if (!expect_punct(";")) {
            recover();
            return;
        }
        if (find_creg(name)) {
            error_at(head, "classical register '" + name + "' redeclared");
            return;
        }
        if (size <= 0) {
            error_at(head, "creg size must be positive");
            return;
        }
        cregs_.push_back({name, size, circuit_.num_clbits});
        circuit_.num_clbits += size;
    }

    void parse_conditional(const Token &head) {
        if (!expect_punct("(")) {
            recover();
            return;
        }
        if (cur_.type != Tok::Ident) {
            error_here("expected classical register in condition");
            recover();
            return;
        }
        Token regtok = cur_;
        advance();
        const Creg *reg = find_creg(regtok.text);
        if (!reg) {
            error_at(regtok, "unknown classical register '" + regtok.text + "'");
            recover();
            return;
        }
        if (!expect_punct("==")) {
            recover();
            return;
        }
        int value = 0;
        if (!parse_uint(value)) {
            recover();
            return;
        }
        if (!expect_punct(")")) {
            recover();
            return;
        }
        if (reg->size != 1 || value != 1) {
            error_at(regtok, "conditionals are limited to 1-bit registers compared to 1");
            recover();
            return;
        }
        if (cur_.type != Tok::Ident) {
            error_here("expected conditional gate");
            recover();
            return;
        }
        Token gate_tok = cur_;
        auto g = parse_plain_gate(gate_tok);
        if (!g.has_value()) {
            if (!handled_unknown_)
                error_at(gate_tok, "unsupported conditional gate '" + gate_tok.text + "'");
            handled_unknown_ = false;
            recover();
            return;
        }
        if (!expect_punct(";")) {
            recover();
            return;
        }
        if (g->kind == GateKind::X) {
            append_gate(head, Gate::cond_x(g->qubits[0], reg->offset));
        } else if (g->kind == GateKind::Z) {
            append_gate(head, Gate::cond_z(g->qubits[0], reg->offset));
        } else {
            error_at(gate_tok, "only x and z may be conditioned");
        }
    }

    Lexer lex_;
    Token cur_;
    Circuit circuit_;
    std::string qreg_name_;
    std::vector<Creg> cregs_;
    std::vector<ParseDiagnostic> diags_;
    bool handled_unknown_ = false;
};

std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

} // namespace

ParseResult parse_qasm(std::string_view text) { return Parser(text).run(); }

std::string emit_qasm(const Circuit &c) {
    bool has_cond = false;
    for (const Gate &g : c.gates)
        if (g.kind == GateKind::CondX || g.kind == GateKind::CondZ) has_cond = true;

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    if (c.num_clbits > 0) {
        if (has_cond) {
            for (int i = 0; i < c.num_clbits; ++i) out << "creg c" << i << "[1];\n";
        } else {
            out << "creg c[" << c.num_clbits << "];\n";
        }
    }
    auto clbit_ref = [&](int bit) {
        return has_cond ? "c" + std::to_string(bit) + "[0]" : "c[" + std::to_string(bit) + "]";
    };
    for (const Gate &g : c.gates) {
        switch (g.kind) {
            case GateKind::Rz:
            case GateKind::Ry:
                out << kind_name(g.kind) << "(" << format_angle(g.angle) << ") q[" << g.qubits[0]
                    << "]";
                break;
            case GateKind::Measure:
                out << "measure q[" << g.qubits[0] << "] -> " << clbit_ref(g.clbit);
                break;
            case GateKind::Reset: out << "reset q[" << g.qubits[0] << "]"; break;
            case GateKind::CondX:
                out << "if(c" << g.clbit << "==1) x q[" << g.qubits[0] << "]";
                break;
            case GateKind::CondZ:
                out << "if(c" << g.clbit << "==1) z q[" << g.qubits[0] << "]";
                break;
            default: {
                out << kind_name(g.kind);
                for (size_t i = 0; i < g.qubits.size(); ++i)
                    out << (i ? "," : " ") << "q[" << g.qubits[i] << "]";
                break;
            }
        }
        out << ";";
        if (g.comm) out << " // comm";
        out << "\n";
    }
    return out.str();
}

} // namespace dqc
