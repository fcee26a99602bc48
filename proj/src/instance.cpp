#include "tdilp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <sstream>

namespace tdilp {

namespace {

std::vector<Term> normalize_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.second == 0; });
    return merged;
}

bool terms_less(const std::vector<Term>& a, const std::vector<Term>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Term& x, const Term& y) {
                                            if (x.first != y.first)
                                                return x.first < y.first;
                                            return x.second < y.second;
                                        });
}

}  // namespace

LinearConstraint::LinearConstraint(std::vector<Term> terms, Integer rhs)
    : terms_(normalize_terms(std::move(terms))), rhs_(std::move(rhs))
{
    if (terms_.empty())
        throw std::invalid_argument("constraint has no variables");
}

bool LinearConstraint::contains(VariableId v) const
{
    return coefficient(v) != nullptr;
}

const Integer* LinearConstraint::coefficient(VariableId v) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, VariableId id) { return t.first < id; });
    if (it == terms_.end() || it->first != v)
        return nullptr;
    return &it->second;
}

bool operator<(const LinearConstraint& a, const LinearConstraint& b)
{
    if (terms_less(a.terms_, b.terms_))
        return true;
    if (terms_less(b.terms_, a.terms_))
        return false;
    return a.rhs_ < b.rhs_;
}

LinearObjective::LinearObjective(std::vector<Term> terms) : terms_(normalize_terms(std::move(terms))) {}

Integer LinearObjective::coefficient(VariableId v) const
{
    for (const auto& [id, c] : terms_)
        if (id == v)
            return c;
    return 0;
}

IlpInstance::IlpInstance(std::vector<Variable> variables, std::set<LinearConstraint> constraints,
                         LinearObjective objective)
    : variables_(std::move(variables)), constraints_(std::move(constraints)),
      objective_(std::move(objective))
{
    std::sort(variables_.begin(), variables_.end(),
              [](const Variable& a, const Variable& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < variables_.size(); ++i)
        if (variables_[i - 1].id == variables_[i].id)
            throw std::invalid_argument("duplicate variable id");
    auto check = [&](VariableId v) {
        if (!has_variable(v))
            throw std::invalid_argument("undeclared variable id " + std::to_string(v.value));
    };
    for (const auto& c : constraints_)
        for (const auto& t : c.terms())
            check(t.first);
    for (const auto& t : objective_.terms())
        check(t.first);
}

bool IlpInstance::has_variable(VariableId v) const
{
    return std::binary_search(variables_.begin(), variables_.end(), Variable{v, {}},
                              [](const Variable& a, const Variable& b) { return a.id < b.id; });
}

std::size_t IlpInstance::index_of(VariableId v) const
{
    auto it = std::lower_bound(variables_.begin(), variables_.end(), v,
                               [](const Variable& a, VariableId id) { return a.id < id; });
    if (it == variables_.end() || it->id != v)
        throw std::out_of_range("unknown variable id " + std::to_string(v.value));
    return static_cast<std::size_t>(it - variables_.begin());
}

const std::string& IlpInstance::name_of(VariableId v) const
{
    return variables_[index_of(v)].name;
}

std::optional<VariableId> IlpInstance::find(std::string_view name) const
{
    for (const auto& v : variables_)
        if (v.name == name)
            return v.id;
    return std::nullopt;
}

VariableId InstanceBuilder::variable(std::string_view name)
{
    auto it = by_name_.find(name);
    if (it != by_name_.end())
        return it->second;
    VariableId id{static_cast<std::int32_t>(variables_.size())};
    variables_.push_back({id, std::string(name)});
    by_name_.emplace(std::string(name), id);
    return id;
}

std::vector<Term> InstanceBuilder::resolve(const std::vector<std::pair<std::string, Integer>>& terms)
{
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto& [name, c] : terms)
        out.emplace_back(variable(name), c);
    return out;
}

void InstanceBuilder::add_le(std::vector<std::pair<std::string, Integer>> terms, Integer rhs)
{
    constraints_.insert(LinearConstraint(resolve(terms), std::move(rhs)));
}

void InstanceBuilder::add_ge(std::vector<std::pair<std::string, Integer>> terms, Integer rhs)
{
    for (auto& t : terms)
        t.second = -t.second;
    add_le(std::move(terms), -rhs);
}

void InstanceBuilder::add_eq(std::vector<std::pair<std::string, Integer>> terms, Integer rhs)
{
    add_le(terms, rhs);
    add_ge(std::move(terms), std::move(rhs));
}

void InstanceBuilder::set_objective(std::vector<std::pair<std::string, Integer>> terms)
{
    objective_ = LinearObjective(resolve(terms));
}

IlpInstance InstanceBuilder::build() const
{
    return IlpInstance(variables_, constraints_, objective_);
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

MissingVariable::MissingVariable(VariableId v)
    : std::runtime_error("assignment is missing variable id " + std::to_string(v.value)), v_(v)
{
}

// ---------------------------------------------------------------------------
// Text format

namespace {

enum class TokenKind { Integer, Identifier, Plus, Minus, Star, Le, Ge, Lt, Gt, Eq, Colon };

struct Token {
    TokenKind kind;
    std::string text;
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view line, int lineno)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            out.push_back({TokenKind::Integer, std::string(line.substr(i, j - i))});
            i = j;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j]))
                ++j;
            out.push_back({TokenKind::Identifier, std::string(line.substr(i, j - i))});
            i = j;
        } else if (c == '<' || c == '>' || c == '=') {
            bool eq_follows = i + 1 < line.size() && line[i + 1] == '=';
            if (c == '=') {
                out.push_back({TokenKind::Eq, "="});
                i += eq_follows ? 2 : 1;  // accept "=="
            } else if (c == '<') {
                out.push_back({eq_follows ? TokenKind::Le : TokenKind::Lt, ""});
                i += eq_follows ? 2 : 1;
            } else {
                out.push_back({eq_follows ? TokenKind::Ge : TokenKind::Gt, ""});
                i += eq_follows ? 2 : 1;
            }
        } else if (c == '+') {
            out.push_back({TokenKind::Plus, "+"});
            ++i;
        } else if (c == '-') {
            out.push_back({TokenKind::Minus, "-"});
            ++i;
        } else if (c == '*') {
            out.push_back({TokenKind::Star, "*"});
            ++i;
        } else if (c == ':') {
            out.push_back({TokenKind::Colon, ":"});
            ++i;
        } else {
            throw ParseError(lineno, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

using NamedTerms = std::vector<std::pair<std::string, Integer>>;

class LineParser {
public:
    LineParser(std::vector<Token> tokens, int lineno) : tokens_(std::move(tokens)), lineno_(lineno) {}

    bool at_end() const { return pos_ == tokens_.size(); }
    const Token* peek() const { return at_end() ? nullptr : &tokens_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno_, msg); }

    NamedTerms linexpr()
    {
        NamedTerms terms;
        bool first = true;
        bool saw_constant = false;
        for (;;) {
            const Token* t = peek();
            if (!t)
                break;
            Integer sign = 1;
            if (t->kind == TokenKind::Plus || t->kind == TokenKind::Minus) {
                sign = t->kind == TokenKind::Minus ? -1 : 1;
                ++pos_;
                t = peek();
                if (!t)
                    fail("dangling sign");
            } else if (!first) {
                break;
            }
            if (t->kind == TokenKind::Integer) {
                Integer coef = *parse_integer(t->text);
                ++pos_;
                const Token* n = peek();
                if (n && n->kind == TokenKind::Star) {
                    ++pos_;
                    n = peek();
                    if (!n || n->kind != TokenKind::Identifier)
                        fail("expected variable after '*'");
                }
                if (n && n->kind == TokenKind::Identifier) {
                    terms.emplace_back(n->text, sign * coef);
                    ++pos_;
                } else {
                    if (coef != 0)
                        fail("constant term on the left-hand side");
                    saw_constant = true;
                }
            } else if (t->kind == TokenKind::Identifier) {
                terms.emplace_back(t->text, sign);
                ++pos_;
            } else {
                fail("expected a term");
            }
            first = false;
        }
        if (first)
            fail("empty linear expression");
        (void)saw_constant;
        return terms;
    }

    Integer integer()
    {
        Integer sign = 1;
        const Token* t = peek();
        if (t && (t->kind == TokenKind::Plus || t->kind == TokenKind::Minus)) {
            sign = t->kind == TokenKind::Minus ? -1 : 1;
            ++pos_;
            t = peek();
        }
        if (!t || t->kind != TokenKind::Integer)
            fail("expected an integer right-hand side");
        ++pos_;
        return sign * *parse_integer(t->text);
    }

    TokenKind relation()
    {
        const Token* t = peek();
        if (!t || (t->kind != TokenKind::Le && t->kind != TokenKind::Ge && t->kind != TokenKind::Eq &&
                   t->kind != TokenKind::Lt && t->kind != TokenKind::Gt))
            fail("expected one of <=, >=, =, <, >");
        ++pos_;
        return t->kind;
    }

    void expect_keyword(std::string_view word)
    {
        const Token* t = peek();
        if (!t || t->kind != TokenKind::Identifier || t->text != word)
            fail("expected '" + std::string(word) + ":'");
        ++pos_;
        t = peek();
        if (!t || t->kind != TokenKind::Colon)
            fail("expected ':' after '" + std::string(word) + "'");
        ++pos_;
    }

    std::vector<std::string> identifiers()
    {
        std::vector<std::string> out;
        while (const Token* t = peek()) {
            if (t->kind != TokenKind::Identifier)
                fail("expected a variable name");
            out.push_back(t->text);
            ++pos_;
        }
        return out;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int lineno_;
};

bool starts_with_keyword(const std::vector<Token>& tokens, std::string_view word)
{
    return tokens.size() >= 2 && tokens[0].kind == TokenKind::Identifier && tokens[0].text == word &&
           tokens[1].kind == TokenKind::Colon;
}

}  // namespace

IlpInstance parse_instance(std::string_view text)
{
    struct Line {
        int number;
        std::vector<Token> tokens;
    };
    std::vector<Line> lines;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++lineno;
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tokens = tokenize(line, lineno);
        if (!tokens.empty())
            lines.push_back({lineno, std::move(tokens)});
        start = end + 1;
    }
    if (lines.empty())
        throw ParseError(1, "missing 'max:' line");
    if (!starts_with_keyword(lines.front().tokens, "max"))
        throw ParseError(lines.front().number, "first line must be 'max: <expr>'");

    InstanceBuilder builder;
    // Declaration lines fix the id order before anything else is read.
    for (const auto& line : lines) {
        if (starts_with_keyword(line.tokens, "int")) {
            LineParser p(line.tokens, line.number);
            p.expect_keyword("int");
            for (const auto& name : p.identifiers())
                builder.variable(name);
        }
    }
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& line = lines[li];
        LineParser p(line.tokens, line.number);
        if (li == 0) {
            p.expect_keyword("max");
            auto terms = p.linexpr();
            if (!p.at_end())
                p.fail("trailing tokens after objective");
            builder.set_objective(std::move(terms));
            continue;
        }
        if (starts_with_keyword(line.tokens, "int"))
            continue;
        if (starts_with_keyword(line.tokens, "max"))
            p.fail("duplicate 'max:' line");
        auto terms = p.linexpr();
        TokenKind rel = p.relation();
        Integer rhs = p.integer();
        if (!p.at_end())
            p.fail("trailing tokens after right-hand side");
        try {
            switch (rel) {
            case TokenKind::Le: builder.add_le(std::move(terms), rhs); break;
            case TokenKind::Lt: builder.add_le(std::move(terms), rhs - 1); break;
            case TokenKind::Ge: builder.add_ge(std::move(terms), rhs); break;
            case TokenKind::Gt: builder.add_ge(std::move(terms), rhs + 1); break;
            default: builder.add_eq(std::move(terms), rhs); break;
            }
        } catch (const std::invalid_argument& e) {
            p.fail(e.what());
        }
    }
    return builder.build();
}

IlpInstance parse_instance(std::istream& in)
{
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_instance(std::string_view(text));
}

namespace {

void write_linexpr(std::ostream& out, const IlpInstance& instance, const std::vector<Term>& terms)
{
    bool first = true;
    for (const auto& [id, c] : terms) {
        bool negative = c < 0;
        Integer mag = negative ? Integer(-c) : c;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        if (mag != 1)
            out << mag << ' ';
        out << instance.name_of(id);
        first = false;
    }
}

}  // namespace

std::string serialize_instance(const IlpInstance& instance)
{
    std::ostringstream out;
    out << "max: ";
    if (instance.objective().empty())
        out << "0";
    else
        write_linexpr(out, instance, instance.objective().terms());
    out << '\n';

    // A declaration line is needed when first use would not reproduce the id
    // order, or when some variable occurs nowhere.
    std::vector<VariableId> first_use;
    std::set<VariableId> seen;
    auto note = [&](VariableId v) {
        if (seen.insert(v).second)
            first_use.push_back(v);
    };
    for (const auto& t : instance.objective().terms())
        note(t.first);
    for (const auto& c : instance.constraints())
        for (const auto& t : c.terms())
            note(t.first);
    bool in_order = first_use.size() == instance.num_variables();
    for (std::size_t i = 0; in_order && i < first_use.size(); ++i)
        in_order = first_use[i] == instance.variables()[i].id;
    if (!in_order) {
        out << "int:";
        for (const auto& v : instance.variables())
            out << ' ' << v.name;
        out << '\n';
    }

    for (const auto& c : instance.constraints()) {
        write_linexpr(out, instance, c.terms());
        out << " <= " << c.rhs() << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------

Integer evaluate_constraint(const LinearConstraint& constraint, const Assignment& assignment)
{
    Integer sum = 0;
    for (const auto& [id, c] : constraint.terms()) {
        auto it = assignment.find(id);
        if (it == assignment.end())
            throw MissingVariable(id);
        sum += c * it->second;
    }
    return sum;
}

Integer evaluate_objective(const IlpInstance& instance, const Assignment& assignment)
{
    Integer sum = 0;
    for (const auto& [id, c] : instance.objective().terms()) {
        auto it = assignment.find(id);
        if (it == assignment.end())
            throw MissingVariable(id);
        sum += c * it->second;
    }
    return sum;
}

bool check_feasible(const IlpInstance& instance, const Assignment& assignment)
{
    for (const auto& c : instance.constraints()) {
        try {
            if (evaluate_constraint(c, assignment) > c.rhs())
                return false;
        } catch (const MissingVariable&) {
            return false;
        }
    }
    return true;
}

Integer max_abs_coefficient(const IlpInstance& instance)
{
    Integer best = 0;
    for (const auto& c : instance.constraints()) {
        best = std::max(best, abs_value(c.rhs()));
        for (const auto& t : c.terms())
            best = std::max(best, abs_value(t.second));
    }
    return best;
}

IlpInstance omit_variables(const IlpInstance& instance, const std::set<VariableId>& omitted)
{
    if (omitted.empty())
        return instance;
    std::vector<Variable> vars;
    for (const auto& v : instance.variables())
        if (!omitted.contains(v.id))
            vars.push_back(v);
    std::set<LinearConstraint> kept;
    for (const auto& c : instance.constraints()) {
        bool touches = std::any_of(c.terms().begin(), c.terms().end(),
                                   [&](const Term& t) { return omitted.contains(t.first); });
        if (!touches)
            kept.insert(c);
    }
    std::vector<Term> obj;
    for (const auto& t : instance.objective().terms())
        if (!omitted.contains(t.first))
            obj.push_back(t);
    return IlpInstance(std::move(vars), std::move(kept), LinearObjective(std::move(obj)));
}

}  // namespace tdilp
