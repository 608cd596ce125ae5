// Sensitivity sweep harness: group catalog, perturbation soundness, percent
// algebra, determinism, frozen-bounds reuse, and the cost decomposition.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dscpsc/sensitivity.hpp"
#include "support.hpp"

namespace {

using namespace dscpsc;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

/* Same tiny valued instance as the fuzzy suite: one refinery, one existing
 * DC, one customer; up to two road vehicles (nmax), each moving one unit;
 * selling earns 3 per unit, each vehicle costs ncostlm = 1 and pollutes 1.
 *
 * Sweep oracle, derived by hand before this file was written.  With the
 * vehicle cost scaled to c, profit = 3q - cn over n in {0,1,2}, q in [0,n],
 * pollution = n.  The profit anchors are [-2c, 6-2c] (span exactly 6) and
 * pollution spans [0,2], so the satisfactions are (3q - cn + 2c)/6 and
 * 1 - n/2.  Best max-min per fleet size: c/3 at n=0, 1/2 at n=1 (any
 * q >= 1 - c/3), 0 at n=2.  For every c in {0.7, 1.0, 1.3} the compromise
 * keeps lambda = 1/2 and n = 1, hence the cost total is exactly c: the
 * -30/+30 sweep of the vehicle-cost group moves the cost metric by exactly
 * -30/+30 percent, while lambda stays put. */
ModelInstance make_valued_novac() {
    using testsupport::make_blank_instance;
    InstanceSets s = testsupport::make_unit_instance().sets;
    s.candidate_refineries = {};
    s.candidate_dcs = {};
    ModelInstance inst = make_blank_instance(std::move(s), {0}, {{0}}, "valued-novac");
    inst.params.nmax.ref(0) = 2.0;
    inst.params.trc.ref(0, 0) = 1.0;
    inst.params.field_cap.ref(0) = 10.0;
    inst.params.icl.ref(0, 0) = 4.0;
    inst.params.price.ref(0, 0, 0) = 3.0;
    inst.params.ncostlm.ref(0, 0, 0, 0, 0) = 1.0;
    inst.params.pulv.ref(0, 0) = 1.0;
    inst.params.dist.ref(0, 0) = 1.0;
    return inst;
}

/* Unit instance with every cost-side table filled with deterministic
 * positive values, so each breakdown bucket owns at least one term. */
ModelInstance make_costly_unit() {
    ModelInstance inst = testsupport::make_unit_instance();
    inst.name = "costly-unit";
    const std::vector<std::string> filled = {
        "xcostk", "xcostl", "ucostk", "ucostl", "ycostkl", "ycostlpl", "rcostkl", "rcostlpl",
        "tank_cost", "ncostkl", "ncostlm", "ncostlpl", "hcostk", "hcostl", "qcostkl", "qcostlpl",
        "pcostk", "pcostl", "fcostk", "fcostl", "icost", "clcostk", "wcost", "crude_price",
        "price", "export_price", "ick", "icl", "capk", "capl", "nck", "nct"};
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> val(0.5, 2.0);
    for (const std::string& key : filled) {
        bool found = false;
        for (const TableInfo& info : table_registry())
            if (key == info.key) {
                for (double& v : (inst.params.*(info.member)).data) v = val(rng);
                found = true;
                break;
            }
        REQUIRE(found);
    }
    return inst;
}

} // namespace

TEST_CASE("parameter group catalog is fixed, disjoint and registry-backed", "[sensitivity]") {
    const auto& groups = parameter_groups();
    REQUIRE(groups.size() == 8);

    const std::map<std::string, std::vector<std::string>> expected = {
        {"pipeline-transport-costs", {"qcostkl", "qcostlpl"}},
        {"non-pipeline-transport-costs", {"ncostkl", "ncostlm", "ncostlpl"}},
        {"facility-expansion-costs", {"ucostk", "ucostl"}},
        {"inventory-costs", {"hcostk", "hcostl"}},
        {"variable-costs", {"pcostk", "pcostl"}},
        {"route-install-and-expansion-costs", {"rcostkl", "rcostlpl", "ycostkl", "ycostlpl"}},
        {"facility-installation-costs", {"xcostk", "xcostl", "tank_cost"}},
        {"fixed-costs", {"fcostk", "fcostl"}},
    };
    std::set<std::string> seen_tables;
    for (const ParameterGroup& g : groups) {
        REQUIRE(expected.count(g.name) == 1);
        CHECK(g.tables == expected.at(g.name));
        for (const std::string& t : g.tables) {
            CHECK(seen_tables.insert(t).second); /* disjoint across groups */
            bool in_registry = false;
            for (const TableInfo& info : table_registry())
                if (t == info.key) in_registry = true;
            CHECK(in_registry);
        }
    }
    CHECK(seen_tables.size() == 20);

    CHECK(find_group("inventory-costs").tables.size() == 2);
    CHECK_THROWS_WITH(find_group("spice-costs"), ContainsSubstring("unknown parameter group"));

    CHECK(std::string(metric_str(metric_from_str("profit"))) == "profit");
    CHECK(std::string(metric_str(metric_from_str("lambda"))) == "lambda");
    CHECK(std::string(metric_str(metric_from_str("cost"))) == "cost");
    CHECK_THROWS_WITH(metric_from_str("speed"), ContainsSubstring("unknown metric"));
}

TEST_CASE("perturb rescales exactly the member tables", "[sensitivity]") {
    const ModelInstance base = make_costly_unit();
    const std::string group = "inventory-costs";
    const double level = 20.0;
    const ModelInstance moved = perturb(base, group, level);

    CHECK(moved.name == base.name);
    CHECK(moved.sets.stakeholders == base.sets.stakeholders);
    CHECK(moved.refinery_owner == base.refinery_owner);
    CHECK(moved.dc_users == base.dc_users);

    const double factor = 1.0 + level / 100.0;
    for (const TableInfo& info : table_registry()) {
        const Table& was = base.params.*(info.member);
        const Table& now = moved.params.*(info.member);
        REQUIRE(was.data.size() == now.data.size());
        const bool member = [&] {
            for (const std::string& t : find_group(group).tables)
                if (t == info.key) return true;
            return false;
        }();
        for (std::size_t i = 0; i < was.data.size(); ++i) {
            if (member)
                CHECK(now.data[i] == was.data[i] * factor);
            else
                CHECK(now.data[i] == was.data[i]); /* bit-for-bit untouched */
        }
    }
}

TEST_CASE("zero level changes nothing and the grid is idempotent", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    const SolverBackend backend = SolverBackend::embedded();
    SensitivityOptions opts;
    opts.groups = {"non-pipeline-transport-costs", "facility-installation-costs"};
    opts.levels = {-10.0, 0.0, 10.0};

    const SensitivityReport a = run_sensitivity(inst, backend, opts);
    const SensitivityReport b = run_sensitivity(inst, backend, opts);

    REQUIRE(a.cells.size() == 6);
    for (const SensitivityCell& c : a.cells) {
        CHECK(c.solved());
        CHECK(c.error.empty());
        REQUIRE(c.pct_change.at("e1").has_value());
    }

    /* level 0 scales by exactly 1.0; the deterministic pipeline must land on
     * the identical compromise, so the change is exactly zero */
    for (const SensitivityCell& c : a.cells)
        if (c.level_pct == 0.0) CHECK(*c.pct_change.at("e1") == 0.0);

    /* the facility-installation tables are all zero here, so any scaling of
     * them is the identity as well */
    for (const SensitivityCell& c : a.cells)
        if (c.group == "facility-installation-costs") CHECK(*c.pct_change.at("e1") == 0.0);

    /* full determinism: the repeat run reproduces every number and byte */
    REQUIRE(b.cells.size() == a.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].group == b.cells[i].group);
        CHECK(a.cells[i].level_pct == b.cells[i].level_pct);
        CHECK(a.cells[i].value == b.cells[i].value);
        CHECK(a.cells[i].pct_change.at("e1") == b.cells[i].pct_change.at("e1"));
    }
    CHECK(a.csv() == b.csv());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("cost metric reproduces the hand-derived sweep", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    SensitivityOptions opts;
    opts.groups = {"non-pipeline-transport-costs"};
    opts.levels = {30.0, -30.0}; /* deliberately unsorted */
    opts.metric = SensMetric::Cost;

    const SensitivityReport rep = run_sensitivity(inst, SolverBackend::embedded(), opts);
    CHECK_THAT(rep.base_value.at("e1"), WithinAbs(1.0, 1e-9));

    REQUIRE(rep.cells.size() == 2);
    CHECK(rep.cells[0].level_pct == -30.0); /* sorted output */
    CHECK(rep.cells[1].level_pct == 30.0);
    for (const SensitivityCell& c : rep.cells) {
        CHECK(c.status == SolveStatus::Optimal);
        REQUIRE(c.pct_change.at("e1").has_value());
    }
    CHECK_THAT(rep.cells[0].value.at("e1"), WithinAbs(0.7, 1e-9));
    CHECK_THAT(rep.cells[1].value.at("e1"), WithinAbs(1.3, 1e-9));
    CHECK_THAT(*rep.cells[0].pct_change.at("e1"), WithinAbs(-30.0, 1e-9));
    CHECK_THAT(*rep.cells[1].pct_change.at("e1"), WithinAbs(30.0, 1e-9));
}

TEST_CASE("profit metric agrees with a direct re-solve either side", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    const SolverBackend backend = SolverBackend::embedded();
    SensitivityOptions opts;
    opts.groups = {"non-pipeline-transport-costs"};
    opts.levels = {-30.0, 30.0};

    const SensitivityReport rep = run_sensitivity(inst, backend, opts);
    REQUIRE(rep.cells.size() == 2);

    /* direct route: scale the member tables by hand, run the fuzzy pipeline
     * ourselves and redo the percent algebra */
    const FuzzyReport base = solve_fuzzy(inst, backend);
    REQUIRE(base.solved());
    const double base_profit = base.per_stakeholder.at("e1")[0];
    for (std::size_t i = 0; i < 2; ++i) {
        const double level = rep.cells[i].level_pct;
        ModelInstance byhand = inst;
        const double factor = 1.0 + level / 100.0;
        for (double& v : byhand.params.ncostkl.data) v *= factor;
        for (double& v : byhand.params.ncostlm.data) v *= factor;
        for (double& v : byhand.params.ncostlpl.data) v *= factor;
        const FuzzyReport fr = solve_fuzzy(byhand, backend);
        REQUIRE(fr.solved());
        const double direct = fr.per_stakeholder.at("e1")[0];
        const double direct_pct = 100.0 * (direct - base_profit) / std::abs(base_profit);
        REQUIRE(rep.cells[i].pct_change.at("e1").has_value());
        CHECK(*rep.cells[i].pct_change.at("e1") == direct_pct);
    }

    /* raising every vehicle cost cannot move profit the same way as cutting
     * it: the two ends have opposite signs unless both stalled at zero */
    const double down = *rep.cells[0].pct_change.at("e1");
    const double up = *rep.cells[1].pct_change.at("e1");
    CHECK(((down == 0.0 && up == 0.0) || (down > 0.0 && up < 0.0) || (down < 0.0 && up > 0.0)));
}

TEST_CASE("lambda metric stays flat across the vehicle-cost sweep", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    SensitivityOptions opts;
    opts.groups = {"non-pipeline-transport-costs"};
    opts.levels = {-30.0, 30.0};
    opts.metric = SensMetric::Lambda;

    const SensitivityReport rep = run_sensitivity(inst, SolverBackend::embedded(), opts);
    CHECK_THAT(rep.base_value.at("e1"), WithinAbs(0.5, 1e-6));
    for (const SensitivityCell& c : rep.cells) {
        REQUIRE(c.pct_change.at("e1").has_value());
        CHECK_THAT(c.value.at("e1"), WithinAbs(0.5, 1e-6));
        CHECK_THAT(*c.pct_change.at("e1"), WithinAbs(0.0, 1e-3));
    }
}

TEST_CASE("zero base marks cells undefined, never NaN", "[sensitivity]") {
    /* all tables zero: profit is identically 0, so there is no base to
     * divide by */
    using testsupport::make_blank_instance;
    InstanceSets s = testsupport::make_unit_instance().sets;
    s.candidate_refineries = {};
    s.candidate_dcs = {};
    const ModelInstance inst = make_blank_instance(std::move(s), {0}, {{0}}, "blank-novac");

    SensitivityOptions opts;
    opts.groups = {"fixed-costs"};
    opts.levels = {-10.0, 10.0};
    const SensitivityReport rep = run_sensitivity(inst, SolverBackend::embedded(), opts);

    CHECK(rep.base_value.at("e1") == 0.0);
    REQUIRE(rep.cells.size() == 2);
    for (const SensitivityCell& c : rep.cells) {
        CHECK(c.solved());
        CHECK(c.pct_change.count("e1") == 1);
        CHECK_FALSE(c.pct_change.at("e1").has_value());
    }
    const std::string csv = rep.csv();
    CHECK_THAT(csv, ContainsSubstring(",undefined,"));
    CHECK_THAT(csv, !ContainsSubstring("nan"));
    CHECK_THAT(rep.to_json(), ContainsSubstring("null"));
    CHECK_THAT(rep.to_json(), !ContainsSubstring("nan"));
    CHECK_THAT(rep.text(), ContainsSubstring("undefined"));
}

TEST_CASE("frozen bounds reuse the base anchors per cell", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    const SolverBackend backend = SolverBackend::embedded();
    SensitivityOptions opts;
    opts.groups = {"non-pipeline-transport-costs"};
    opts.levels = {-30.0, 0.0, 30.0};
    opts.metric = SensMetric::Cost;

    SensitivityOptions frozen = opts;
    frozen.freeze_bounds = true;

    const SensitivityReport loose = run_sensitivity(inst, backend, opts);
    const SensitivityReport tight = run_sensitivity(inst, backend, frozen);

    for (const SensitivityCell& c : loose.cells) CHECK(c.solver_calls == 7);
    for (const SensitivityCell& c : tight.cells) CHECK(c.solver_calls == 1);

    CHECK(tight.frozen_bounds);
    CHECK_THAT(tight.text(), ContainsSubstring("approximate"));

    /* the compromise fleet stays n = 1 against the base anchors too, so the
     * cost sweep is unchanged (derivation in the header comment) */
    REQUIRE(tight.cells.size() == 3);
    CHECK_THAT(*tight.cells[0].pct_change.at("e1"), WithinAbs(-30.0, 1e-9));
    CHECK(*tight.cells[1].pct_change.at("e1") == 0.0);
    CHECK_THAT(*tight.cells[2].pct_change.at("e1"), WithinAbs(30.0, 1e-9));
}

TEST_CASE("failures validate before solving and surface per cell", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    SensitivityOptions opts;
    opts.groups = {"no-such-group"};
    CHECK_THROWS_WITH(run_sensitivity(inst, SolverBackend::embedded(), opts),
                      ContainsSubstring("unknown parameter group"));

    /* an unreachable demand makes the base infeasible: that is a hard error,
     * not a grid of gaps */
    ModelInstance starved = testsupport::make_unit_instance();
    starved.params.demand.ref(0, 0, 0) = 5.0;
    SensitivityOptions plain;
    plain.groups = {"fixed-costs"};
    plain.levels = {10.0};
    CHECK_THROWS_WITH(run_sensitivity(starved, SolverBackend::embedded(), plain),
                      ContainsSubstring("base solve failed"));
}

TEST_CASE("csv is sorted with the exact header", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    SensitivityOptions opts;
    opts.groups = {"variable-costs", "inventory-costs"}; /* unsorted on purpose */
    opts.levels = {10.0, -10.0};

    const SensitivityReport rep = run_sensitivity(inst, SolverBackend::embedded(), opts);
    const std::string csv = rep.csv();

    std::vector<std::string> lines;
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 2 * 2);
    CHECK(lines[0] == "group,level_pct,stakeholder,metric,pct_change,status");
    CHECK_THAT(lines[1], ContainsSubstring("inventory-costs,-10,e1,profit,"));
    CHECK_THAT(lines[2], ContainsSubstring("inventory-costs,10,"));
    CHECK_THAT(lines[3], ContainsSubstring("variable-costs,-10,"));
    CHECK_THAT(lines[4], ContainsSubstring("variable-costs,10,"));
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK_THAT(lines[i], ContainsSubstring(",optimal"));
}

TEST_CASE("cost breakdown of the compromise is transport-only here", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    const FuzzyReport rep = solve_fuzzy(inst, SolverBackend::embedded());
    REQUIRE(rep.solved());

    const CostBreakdown bd = cost_breakdown_report(inst, rep);
    REQUIRE(bd.stakeholders == std::vector<std::string>{"e1"});
    const auto& cat = bd.categories.at("e1");
    REQUIRE(cat.size() == 12);
    CHECK_THAT(cat.at("transport"), WithinAbs(1.0, 1e-9));
    for (const char* key : kCostCategories)
        if (std::string(key) != "transport") CHECK(cat.at(key) == 0.0);
    CHECK_THAT(bd.total.at("e1"), WithinAbs(1.0, 1e-9));
    CHECK_THAT(bd.cost_eval.at("e1"), WithinAbs(1.0, 1e-9));
    const double drift = std::abs(bd.total.at("e1") - bd.cost_eval.at("e1"));
    CHECK(drift <= 1e-6 * std::max(1.0, std::abs(bd.cost_eval.at("e1"))));

    /* renderers */
    std::vector<std::string> lines;
    std::istringstream is(bd.csv());
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 12 + 1);
    CHECK(lines[0] == "stakeholder,category,value");
    CHECK(lines.back() == "e1,total,1");
    CHECK_THAT(bd.text(), ContainsSubstring("transport"));
    CHECK_THAT(bd.to_json(), ContainsSubstring("\"cost_eval\""));

    /* a report that never solved has no compromise to decompose */
    ModelInstance starved = testsupport::make_unit_instance();
    starved.params.demand.ref(0, 0, 0) = 5.0;
    const FuzzyReport bad = solve_fuzzy(starved, SolverBackend::embedded());
    REQUIRE_FALSE(bad.solved());
    CHECK_THROWS_WITH(cost_breakdown_report(starved, bad), ContainsSubstring("solved"));
}

TEST_CASE("categories partition the cost expression at random points", "[sensitivity]") {
    const ModelInstance inst = make_costly_unit();
    ModelBuilder builder(inst, {});
    CHECK_THROWS_WITH(builder.cost_categories(0), ContainsSubstring("build"));
    const MilpModel model = builder.build();
    CHECK_THROWS_WITH(builder.cost_categories(5), ContainsSubstring("out of range"));

    const auto cats = builder.cost_categories(0);
    REQUIRE(cats.size() == 12);
    for (const char* key : kCostCategories) REQUIRE(cats.count(key) == 1);
    const LinExpr whole = builder.stakeholder_cost(0);

    std::mt19937 rng(23u);
    std::uniform_real_distribution<double> point(0.0, 3.0);
    for (int round = 0; round < 20; ++round) {
        Solution sol;
        sol.status = SolveStatus::Feasible;
        for (std::size_t i = 0; i < model.num_vars(); ++i)
            sol.set(VarId{static_cast<std::uint32_t>(i)}, point(rng));
        double split = 0.0;
        for (const auto& [key, expr] : cats) split += eval(expr, sol);
        const double direct = eval(whole, sol);
        CHECK(std::abs(split - direct) <= 1e-6 * std::max(1.0, std::abs(direct)));
        /* the full-table fill makes this a real sum, not 0 == 0 */
        if (round == 0) CHECK(std::abs(direct) > 1.0);
    }
}

TEST_CASE("parallel cells match the serial sweep", "[sensitivity]") {
    const ModelInstance inst = make_valued_novac();
    SensitivityOptions serial;
    serial.groups = {"non-pipeline-transport-costs", "inventory-costs"};
    serial.levels = {-20.0, 20.0};
    SensitivityOptions wide = serial;
    wide.jobs = 4;

    const SensitivityReport a = run_sensitivity(inst, SolverBackend::embedded(), serial);
    const SensitivityReport b = run_sensitivity(inst, SolverBackend::embedded(), wide);
    CHECK(a.csv() == b.csv());
    CHECK(a.to_json() == b.to_json());
}
