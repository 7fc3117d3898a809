#include "normcheck/parser.hpp"

#include <sstream>

namespace normcheck {

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& items, Fn&& fn)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + fn(items[i]);
    return out;
}

std::string identity(const std::string& s) { return s; }

void write_sources(std::ostream& out, const std::vector<std::string>& sources)
{
    if (!sources.empty())
        out << "  source: " << join(sources, quote) << '\n';
}

std::string param_list(const std::vector<Param>& params)
{
    return join(params, [](const Param& p) { return p.name + ": " + p.domain; });
}

void write_fact(std::ostream& out, const FactSymbol& f)
{
    out << "Fact " << f.name;
    if (!f.params.empty()) {
        std::vector<std::string> domains;
        for (const auto& p : f.params)
            domains.push_back(p.domain);
        out << '(';
        for (std::size_t i = 0; i < f.params.size(); ++i) {
            if (i)
                out << ", ";
            if (f.params[i].name != default_fact_param_name(domains, i))
                out << f.params[i].name << ": ";
            out << f.params[i].domain;
        }
        out << ')';
    }
    if (f.derivation)
        out << " = " << to_string(*f.derivation);
    out << '\n';
    write_sources(out, f.sources);
}

void write_act(std::ostream& out, const ActFrame& a)
{
    out << "Act " << a.name << '(' << param_list(a.params()) << ")\n";
    if (a.precondition.kind() != Formula::Kind::constant_true)
        out << "  pre: " << to_string(a.precondition) << '\n';
    auto atoms = [](const FactAtom& x) { return to_string(x); };
    if (!a.creates.empty())
        out << "  creates: " << join(a.creates, atoms) << '\n';
    if (!a.terminates.empty())
        out << "  terminates: " << join(a.terminates, atoms) << '\n';
    write_sources(out, a.sources);
}

void write_duty(std::ostream& out, const DutyFrame& d)
{
    out << "Duty " << d.name << '(' << param_list(d.params()) << ")\n";
    out << "  created-by: " << join(d.created_by, identity) << '\n';
    out << "  enforced-by: " << join(d.enforced_by, identity) << '\n';
    out << "  terminated-by: " << join(d.terminated_by, identity) << '\n';
    write_sources(out, d.sources);
}

} // namespace

std::string serialize_model(const Model& model)
{
    std::ostringstream out;
    for (const auto& ref : model.order) {
        switch (ref.kind) {
        case DeclKind::domain: {
            const auto& d = model.domains.at(ref.index);
            out << "Domain " << d.name << " = " << join(d.members, identity) << '\n';
            break;
        }
        case DeclKind::fact: write_fact(out, model.facts.at(ref.index)); break;
        case DeclKind::act: write_act(out, model.acts.at(ref.index)); break;
        case DeclKind::duty: write_duty(out, model.duties.at(ref.index)); break;
        case DeclKind::init:
            if (!model.initial_facts.empty())
                out << "Init: " << join(model.initial_facts, [](const GroundAtom& g) { return to_string(g); })
                    << '\n';
            break;
        }
    }
    return out.str();
}

} // namespace normcheck
