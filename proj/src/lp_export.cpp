#include <cstdint>
#include <sstream>

#include "sleeproute/error.hpp"
#include "sleeproute/exact.hpp"

namespace sleeproute {

namespace {

std::string node_var(NodeId i) { return "x_a_" + std::to_string(i); }
std::string link_var(const Link& l) { return "x_l_" + std::to_string(l.a) + "_" + std::to_string(l.b); }

struct Term {
    std::string coef;  // "", "-", "2", "237.06", ...
    std::string var;
};

// Emits " name: t1 + t2 - t3 ... <op> rhs", wrapping every few terms so
// lines stay well under LP readers' length limits.
void write_row(std::ostream& out, const std::string& name, const std::vector<Term>& terms, const std::string& tail) {
    out << " " << name << ":";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && i % 8 == 0) out << "\n   ";
        const Term& t = terms[i];
        bool negative = !t.coef.empty() && t.coef.front() == '-';
        std::string mag = negative ? t.coef.substr(1) : t.coef;
        if (i == 0)
            out << " " << (negative ? "- " : "");
        else
            out << (negative ? " - " : " + ");
        if (!mag.empty()) out << mag << " ";
        out << t.var;
    }
    out << " " << tail << "\n";
}

}  // namespace

std::string export_ilp(const ProblemInstance& instance, SubtourMode mode) {
    instance.validate();
    const Network& net = instance.network;
    const std::size_t n = net.node_count();
    const std::size_t sensing = n - 1;
    if (mode == SubtourMode::Full && sensing > kMaxFullSubtourSensingNodes)
        throw Error(Errc::TooManySubtourConstraints,
                    std::to_string(sensing) + " sensing nodes would need 2^" + std::to_string(n) +
                        " subtour rows; full mode allows at most " + std::to_string(kMaxFullSubtourSensingNodes) +
                        " (use lazy mode)");

    std::ostringstream out;
    out << "\\ Sleep-Route integer program\n";
    out << "\\ nodes: " << n << " (sink x_a_0 fixed to 1 and substituted)\n";
    out << "\\ links: " << net.links().size() << ", constellations: " << instance.constellations.group_count()
        << "\n";
    out << "\\ objective coefficients in mJ\n";

    out << "Minimize\n";
    std::vector<Term> objective;
    for (NodeId i = 1; i < n; ++i) objective.push_back({format_mj(instance.node_costs[i]), node_var(i)});
    for (std::size_t k = 0; k < net.links().size(); ++k)
        objective.push_back({format_mj(instance.link_costs[k]), link_var(net.link(k))});
    write_row(out, "obj", objective, "");

    out << "Subject To\n";

    // Tree cardinality: sum x_l = sum x_a - 1, with x_a_0 = 1.
    std::vector<Term> card;
    for (const Link& l : net.links()) card.push_back({"", link_var(l)});
    for (NodeId i = 1; i < n; ++i) card.push_back({"-", node_var(i)});
    write_row(out, "card", card, "= 0");

    if (mode == SubtourMode::Full) {
        // For every subset S: links inside S <= |S n A| - x_a(k), where k is
        // the sink when S contains it and max(S) otherwise. Rows with no
        // terms (0 <= 0) are kept as comments so every subset is accounted for.
        out << "\\ subtour elimination: " << (std::uint64_t{1} << n) << " subsets\n";
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            std::vector<Term> row;
            for (const Link& l : net.links())
                if (((s >> l.a) & 1U) && ((s >> l.b) & 1U)) row.push_back({"", link_var(l)});
            const bool has_sink = s & 1U;
            NodeId pivot = 0;
            for (NodeId i = 0; i < n; ++i)
                if ((s >> i) & 1U) pivot = i;
            std::string rhs = "0";
            for (NodeId i = 1; i < n; ++i) {
                if (!((s >> i) & 1U)) continue;
                if (!has_sink && i == pivot) continue;
                row.push_back({"-", node_var(i)});
            }
            const std::string name = "sub_" + std::to_string(s);
            if (row.empty())
                out << "\\ " << name << ": 0 <= 0\n";
            else
                write_row(out, name, row, "<= " + rhs);
        }
    } else {
        out << "\\ subtour elimination omitted (" << (std::uint64_t{1} << n) << " rows).\n"
            << "\\ For every node subset S, with k the sink if 0 in S and max(S) otherwise:\n"
            << "\\   sum_{(i,j) in E(S)} x_l_i_j <= sum_{i in S} x_a_i - x_a_k\n"
            << "\\ Separate these lazily: given an integral candidate, any cycle among the\n"
            << "\\ chosen links yields a violated row with S = the cycle's nodes.\n";
    }

    // Endpoints: 2 x_l(i,j) <= x_a(i) + x_a(j).
    for (const Link& l : net.links()) {
        std::vector<Term> row{{"2", link_var(l)}};
        if (l.a != kSink) row.push_back({"-", node_var(l.a)});
        row.push_back({"-", node_var(l.b)});
        write_row(out, "end_" + std::to_string(l.a) + "_" + std::to_string(l.b), row,
                  l.a == kSink ? "<= 1" : "<= 0");
    }

    // Representation: each constellation has an active member.
    const auto groups = instance.constellations.groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::string name = "rep_" + std::to_string(g);
        if (groups[g].front() == kSink) {
            out << "\\ " << name << ": x_a_0 >= 1 holds by fixing the sink\n";
            continue;
        }
        std::vector<Term> row;
        for (NodeId v : groups[g]) row.push_back({"", node_var(v)});
        write_row(out, name, row, ">= 1");
    }

    out << "Binary\n";
    for (NodeId i = 1; i < n; ++i) out << " " << node_var(i) << "\n";
    for (const Link& l : net.links()) out << " " << link_var(l) << "\n";
    out << "End\n";
    return out.str();
}

}  // namespace sleeproute
