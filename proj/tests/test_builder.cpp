// Census and structure checks for the network model builder.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dscpsc/builder.hpp"
#include "dscpsc/mps.hpp"
#include "dscpsc/solver.hpp"
#include "support.hpp"

namespace {

using namespace dscpsc;

/* Frozen output of tests/oracles/family_counts.py, an independent brute-force
 * enumeration of every variable and row domain.  Regenerate with
 *   python3 tests/oracles/family_counts.py
 * and paste verbatim; the builder must reproduce every line. */
const char* const kCensus = R"ORACLE(
shape unit
  var alab 1
  var ep 2
  var heek 1
  var heel 1
  var henk 1
  var henl 1
  var imp 2
  var n 1
  var nkl 8
  var nlm 2
  var nlpl 4
  var psik 1
  var qkl 8
  var qlm 2
  var qlpl 4
  var rkl 8
  var rklx 8
  var rlab 1
  var rlpl 4
  var rlplx 4
  var s 0
  var tk 1
  var tl 1
  var vk 2
  var vl 2
  var xi 1
  var xk 1
  var xl 1
  var ykl 1
  var ylpl 0
  var z 1
  con eq6 1
  con eq7 1
  con eq8 1
  con eq9 1
  con eq10 1
  con eq11 1
  con eq12 1
  con eq13 0
  con eq14 1
  con eq15 1
  con eq16 1
  con eq17 1
  con eq18 1
  con eq19 1
  con eq22 1
  con eq23 2
  con eq24 1
  con eq25 1
  con eq26 2
  con eq27 1
  con eq28 1
  con eq29 1
  con eq30 6
  con eq31 3
  con eq32 6
  con eq33 3
  con eq34 3
  con eq35 3
  con eq36 4
  con eq37 0
  con eq38 0
  con eq39 0
  con eq40 0
  con eq41 0
  con eq42 4
  con eq43 2
  con eq44 2
  con eq45 4
  con eq46 2
  con eq47 2
  con eq48 2
  con eq49 2
  con eq50 2
  con eq51 4
  con eq52 4
  con eq53 1
  con eq54 0
  con eq55 2
  con eq56 1
  con eq57 2
  con eq58 1
  con eq59 1
  con eq60 0
  con eq61 1
  con eq62 0
  con eq63 0
  con eq64 0
  con eq65 0
  con eq66 0
  con eq67 0
  con eq68 0
  con eq69 1
  con eq70 1
  con eq71 1
  con eq72 1
  con eq73 1
  con eq74 1
  con eq75 1
  con eq76 1
  con eq77 1
  con eq78 1
  con eq79 1
  con eq80 1
  con eq81 1
  con eq82 1
  con eq83 1
  con eq84 1
  con eq85 1
  con eq86 1
  con eq87 1
  con eq88 1
  con eq20hi 1
  con eq20lo 1
  con eq21hi 1
  con eq21lo 1
  total_vars 75
  total_cons 114
  free_discrete 19

shape unit_valued
  var alab 1
  var ep 2
  var heek 1
  var heel 1
  var henk 1
  var henl 1
  var imp 2
  var n 1
  var nkl 8
  var nlm 2
  var nlpl 4
  var psik 1
  var qkl 8
  var qlm 2
  var qlpl 4
  var rkl 8
  var rklx 8
  var rlab 1
  var rlpl 4
  var rlplx 4
  var s 0
  var tk 1
  var tl 1
  var vk 2
  var vl 2
  var xi 1
  var xk 1
  var xl 1
  var ykl 1
  var ylpl 0
  var z 1
  con eq6 1
  con eq7 1
  con eq8 1
  con eq9 1
  con eq10 1
  con eq11 1
  con eq12 1
  con eq13 0
  con eq14 1
  con eq15 1
  con eq16 1
  con eq17 1
  con eq18 1
  con eq19 1
  con eq22 1
  con eq23 2
  con eq24 1
  con eq25 1
  con eq26 2
  con eq27 1
  con eq28 1
  con eq29 1
  con eq30 6
  con eq31 3
  con eq32 6
  con eq33 3
  con eq34 3
  con eq35 3
  con eq36 4
  con eq37 0
  con eq38 0
  con eq39 0
  con eq40 0
  con eq41 0
  con eq42 4
  con eq43 2
  con eq44 2
  con eq45 4
  con eq46 2
  con eq47 2
  con eq48 2
  con eq49 2
  con eq50 2
  con eq51 4
  con eq52 4
  con eq53 1
  con eq54 0
  con eq55 2
  con eq56 1
  con eq57 2
  con eq58 1
  con eq59 1
  con eq60 0
  con eq61 1
  con eq62 0
  con eq63 0
  con eq64 0
  con eq65 0
  con eq66 0
  con eq67 0
  con eq68 0
  con eq69 1
  con eq70 1
  con eq71 1
  con eq72 1
  con eq73 1
  con eq74 1
  con eq75 1
  con eq76 1
  con eq77 1
  con eq78 1
  con eq79 1
  con eq80 1
  con eq81 1
  con eq82 1
  con eq83 1
  con eq84 1
  con eq85 1
  con eq86 1
  con eq87 1
  con eq88 1
  con eq20hi 1
  con eq20lo 1
  con eq21hi 1
  con eq21lo 1
  total_vars 75
  total_cons 114
  free_discrete 38

shape t2
  var alab 2
  var ep 4
  var heek 2
  var heel 2
  var henk 2
  var henl 2
  var imp 4
  var n 2
  var nkl 16
  var nlm 4
  var nlpl 8
  var psik 2
  var qkl 16
  var qlm 4
  var qlpl 8
  var rkl 16
  var rklx 16
  var rlab 2
  var rlpl 8
  var rlplx 8
  var s 0
  var tk 2
  var tl 2
  var vk 4
  var vl 4
  var xi 2
  var xk 2
  var xl 2
  var ykl 2
  var ylpl 0
  var z 2
  con eq6 1
  con eq7 1
  con eq8 1
  con eq9 2
  con eq10 1
  con eq11 1
  con eq12 1
  con eq13 0
  con eq14 1
  con eq15 2
  con eq16 2
  con eq17 1
  con eq18 2
  con eq19 2
  con eq22 2
  con eq23 4
  con eq24 2
  con eq25 2
  con eq26 4
  con eq27 2
  con eq28 2
  con eq29 2
  con eq30 12
  con eq31 6
  con eq32 12
  con eq33 6
  con eq34 6
  con eq35 6
  con eq36 8
  con eq37 0
  con eq38 0
  con eq39 0
  con eq40 0
  con eq41 0
  con eq42 8
  con eq43 4
  con eq44 4
  con eq45 8
  con eq46 4
  con eq47 4
  con eq48 4
  con eq49 4
  con eq50 4
  con eq51 8
  con eq52 8
  con eq53 2
  con eq54 0
  con eq55 4
  con eq56 1
  con eq57 4
  con eq58 2
  con eq59 2
  con eq60 0
  con eq61 2
  con eq62 0
  con eq63 0
  con eq64 0
  con eq65 0
  con eq66 0
  con eq67 0
  con eq68 0
  con eq69 2
  con eq70 2
  con eq71 2
  con eq72 2
  con eq73 2
  con eq74 2
  con eq75 2
  con eq76 2
  con eq77 2
  con eq78 2
  con eq79 2
  con eq80 2
  con eq81 2
  con eq82 2
  con eq83 2
  con eq84 2
  con eq85 2
  con eq86 2
  con eq87 2
  con eq88 1
  con eq20hi 2
  con eq20lo 2
  con eq21hi 2
  con eq21lo 2
  total_vars 150
  total_cons 218
  free_discrete 38

shape e2
  var alab 1
  var ep 3
  var heek 1
  var heel 1
  var henk 1
  var henl 1
  var imp 3
  var n 1
  var nkl 6
  var nlm 3
  var nlpl 4
  var psik 1
  var qkl 6
  var qlm 3
  var qlpl 4
  var rkl 6
  var rklx 6
  var rlab 1
  var rlpl 4
  var rlplx 4
  var s 0
  var tk 1
  var tl 2
  var vk 2
  var vl 3
  var xi 2
  var xk 1
  var xl 1
  var ykl 1
  var ylpl 0
  var z 1
  con eq6 1
  con eq7 1
  con eq8 1
  con eq9 1
  con eq10 1
  con eq11 1
  con eq12 1
  con eq13 0
  con eq14 1
  con eq15 2
  con eq16 1
  con eq17 1
  con eq18 1
  con eq19 1
  con eq22 1
  con eq23 2
  con eq24 1
  con eq25 1
  con eq26 2
  con eq27 1
  con eq28 1
  con eq29 1
  con eq30 4
  con eq31 2
  con eq32 4
  con eq33 2
  con eq34 2
  con eq35 2
  con eq36 3
  con eq37 0
  con eq38 0
  con eq39 0
  con eq40 0
  con eq41 0
  con eq42 4
  con eq43 2
  con eq44 2
  con eq45 4
  con eq46 2
  con eq47 2
  con eq48 2
  con eq49 3
  con eq50 4
  con eq51 2
  con eq52 4
  con eq53 1
  con eq54 0
  con eq55 2
  con eq56 1
  con eq57 2
  con eq58 1
  con eq59 1
  con eq60 0
  con eq61 1
  con eq62 0
  con eq63 0
  con eq64 0
  con eq65 0
  con eq66 0
  con eq67 0
  con eq68 0
  con eq69 1
  con eq70 2
  con eq71 1
  con eq72 2
  con eq73 1
  con eq74 1
  con eq75 1
  con eq76 1
  con eq77 1
  con eq78 1
  con eq79 1
  con eq80 1
  con eq81 1
  con eq82 1
  con eq83 1
  con eq84 1
  con eq85 1
  con eq86 1
  con eq87 2
  con eq88 1
  con eq20hi 1
  con eq20lo 1
  con eq21hi 1
  con eq21lo 1
  total_vars 74
  total_cons 110
  free_discrete 18

shape l3
  var alab 1
  var ep 3
  var heek 1
  var heel 3
  var henk 0
  var henl 0
  var imp 3
  var n 0
  var nkl 6
  var nlm 3
  var nlpl 12
  var psik 1
  var qkl 6
  var qlm 3
  var qlpl 12
  var rkl 6
  var rklx 6
  var rlab 1
  var rlpl 12
  var rlplx 12
  var s 6
  var tk 1
  var tl 3
  var vk 1
  var vl 3
  var xi 3
  var xk 0
  var xl 0
  var ykl 3
  var ylpl 6
  var z 0
  con eq6 0
  con eq7 0
  con eq8 0
  con eq9 0
  con eq10 1
  con eq11 3
  con eq12 3
  con eq13 6
  con eq14 1
  con eq15 3
  con eq16 3
  con eq17 1
  con eq18 1
  con eq19 3
  con eq22 0
  con eq23 6
  con eq24 3
  con eq25 3
  con eq26 6
  con eq27 3
  con eq28 3
  con eq29 3
  con eq30 0
  con eq31 0
  con eq32 0
  con eq33 0
  con eq34 0
  con eq35 0
  con eq36 3
  con eq37 12
  con eq38 6
  con eq39 6
  con eq40 12
  con eq41 6
  con eq42 12
  con eq43 6
  con eq44 6
  con eq45 12
  con eq46 6
  con eq47 6
  con eq48 6
  con eq49 3
  con eq50 2
  con eq51 0
  con eq52 0
  con eq53 0
  con eq54 0
  con eq55 0
  con eq56 0
  con eq57 0
  con eq58 0
  con eq59 0
  con eq60 0
  con eq61 1
  con eq62 12
  con eq63 12
  con eq64 3
  con eq65 12
  con eq66 12
  con eq67 12
  con eq68 2
  con eq69 1
  con eq70 1
  con eq71 0
  con eq72 3
  con eq73 1
  con eq74 3
  con eq75 0
  con eq76 0
  con eq77 1
  con eq78 3
  con eq79 0
  con eq80 0
  con eq81 1
  con eq82 1
  con eq83 1
  con eq84 0
  con eq85 1
  con eq86 0
  con eq87 3
  con eq88 1
  con eq20hi 0
  con eq20lo 0
  con eq21hi 0
  con eq21lo 0
  total_vars 117
  total_cons 243
  free_discrete 38

shape novac
  var alab 1
  var ep 1
  var heek 1
  var heel 1
  var henk 0
  var henl 0
  var imp 1
  var n 0
  var nkl 2
  var nlm 1
  var nlpl 0
  var psik 1
  var qkl 2
  var qlm 1
  var qlpl 0
  var rkl 2
  var rklx 2
  var rlab 1
  var rlpl 0
  var rlplx 0
  var s 0
  var tk 1
  var tl 1
  var vk 1
  var vl 1
  var xi 1
  var xk 0
  var xl 0
  var ykl 1
  var ylpl 0
  var z 0
  con eq6 0
  con eq7 0
  con eq8 0
  con eq9 0
  con eq10 1
  con eq11 1
  con eq12 1
  con eq13 0
  con eq14 1
  con eq15 1
  con eq16 1
  con eq17 1
  con eq18 1
  con eq19 1
  con eq22 0
  con eq23 2
  con eq24 1
  con eq25 1
  con eq26 2
  con eq27 1
  con eq28 1
  con eq29 1
  con eq30 0
  con eq31 0
  con eq32 0
  con eq33 0
  con eq34 0
  con eq35 0
  con eq36 1
  con eq37 0
  con eq38 0
  con eq39 0
  con eq40 0
  con eq41 0
  con eq42 0
  con eq43 0
  con eq44 0
  con eq45 0
  con eq46 0
  con eq47 0
  con eq48 0
  con eq49 1
  con eq50 2
  con eq51 0
  con eq52 0
  con eq53 0
  con eq54 0
  con eq55 0
  con eq56 0
  con eq57 0
  con eq58 0
  con eq59 0
  con eq60 0
  con eq61 1
  con eq62 0
  con eq63 0
  con eq64 0
  con eq65 0
  con eq66 0
  con eq67 0
  con eq68 0
  con eq69 1
  con eq70 1
  con eq71 0
  con eq72 1
  con eq73 1
  con eq74 1
  con eq75 0
  con eq76 0
  con eq77 1
  con eq78 1
  con eq79 0
  con eq80 0
  con eq81 1
  con eq82 1
  con eq83 1
  con eq84 0
  con eq85 1
  con eq86 0
  con eq87 1
  con eq88 1
  con eq20hi 0
  con eq20lo 0
  con eq21hi 0
  con eq21lo 0
  total_vars 23
  total_cons 36
  free_discrete 6

)ORACLE";

struct Census {
    std::map<std::string, std::size_t> vars, cons;
    std::size_t total_vars = 0, total_cons = 0, free_discrete = 0;
};

std::map<std::string, Census> parse_census(const std::string& text) {
    std::map<std::string, Census> out;
    std::istringstream in(text);
    std::string line;
    Census* cur = nullptr;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "shape") {
            std::string name;
            ls >> name;
            cur = &out[name];
        } else if (word == "var") {
            std::string fam;
            std::size_t n = 0;
            ls >> fam >> n;
            cur->vars[fam] = n;
        } else if (word == "con") {
            std::string tag;
            std::size_t n = 0;
            ls >> tag >> n;
            cur->cons[tag] = n;
        } else if (word == "total_vars") {
            ls >> cur->total_vars;
        } else if (word == "total_cons") {
            ls >> cur->total_cons;
        } else if (word == "free_discrete") {
            ls >> cur->free_discrete;
        } else {
            throw std::runtime_error("census: unexpected line: " + line);
        }
    }
    return out;
}

/* Instances matching the oracle script's shapes one for one. */
ModelInstance shape_instance(const std::string& name) {
    using testsupport::make_blank_instance;
    using testsupport::make_unit_instance;
    if (name == "unit") return make_unit_instance();
    if (name == "unit_valued") {
        ModelInstance inst = make_unit_instance();
        inst.name = "unit_valued";
        inst.params.nmax.ref(0) = 2.0;     /* fleet cap 2 */
        inst.params.ncl.ref(0, 0) = 6.0;   /* dc size 6 over tank size 2 -> 3 tanks */
        inst.params.nct.ref(0, 0) = 2.0;
        for (double& v : inst.params.nlab.data) v = 5.0; /* labor pool 5 */
        return inst;
    }
    if (name == "t2") {
        InstanceSets s = make_unit_instance().sets;
        s.periods = {"t1", "t2"};
        return make_blank_instance(std::move(s), {0, 0}, {{0}, {0}}, "t2");
    }
    if (name == "e2") {
        InstanceSets s = make_unit_instance().sets;
        s.stakeholders = {"e1", "e2"};
        return make_blank_instance(std::move(s), {0, 1}, {{0, 1}, {1}}, "e2");
    }
    if (name == "l3") {
        InstanceSets s = make_unit_instance().sets;
        s.candidate_refineries = {};
        s.dcs = {"l1", "l2", "l3"};
        s.candidate_dcs = {};
        return make_blank_instance(std::move(s), {0}, {{0}, {0}, {0}}, "l3");
    }
    if (name == "novac") {
        InstanceSets s = make_unit_instance().sets;
        s.candidate_refineries = {};
        s.candidate_dcs = {};
        return make_blank_instance(std::move(s), {0}, {{0}}, "novac");
    }
    throw std::runtime_error("unknown census shape " + name);
}

const Constraint& find_con(const MilpModel& m, const std::string& name) {
    for (const Constraint& c : m.constraints())
        if (c.name == name) return c;
    throw std::runtime_error("no constraint named " + name);
}

double coeff_of(const MilpModel& m, const Constraint& c, const std::string& var) {
    auto id = m.find_var(var);
    if (!id) throw std::runtime_error("no variable named " + var);
    return c.expr.coeff(*id);
}

} // namespace

TEST_CASE("builder reproduces the independent family census", "[builder]") {
    const auto census = parse_census(kCensus);
    REQUIRE(census.size() == 6);
    for (const auto& [name, want] : census) {
        DYNAMIC_SECTION("shape " << name) {
            BuildReport rep;
            MilpModel model = build_model(shape_instance(name), {}, &rep);
            for (const auto& [fam, n] : want.vars) {
                INFO("variable family " << fam);
                REQUIRE(rep.var_families.count(fam) == 1);
                CHECK(rep.var_families.at(fam) == n);
            }
            CHECK(rep.var_families.size() == want.vars.size());
            for (const auto& [tag, n] : want.cons) {
                INFO("constraint family " << tag);
                REQUIRE(rep.con_families.count(tag) == 1);
                CHECK(rep.con_families.at(tag) == n);
            }
            CHECK(rep.con_families.size() == want.cons.size());
            CHECK(rep.num_vars == want.total_vars);
            CHECK(rep.num_constraints == want.total_cons);
            CHECK(rep.num_free_discrete == want.free_discrete);
            CHECK(model.num_vars() == want.total_vars);
            CHECK(model.num_constraints() == want.total_cons);
            CHECK(model.num_free_discrete() == want.free_discrete);
        }
    }
}

TEST_CASE("builder output is deterministic", "[builder]") {
    BuildReport r1, r2;
    const MilpModel a = build_model(testsupport::make_unit_instance(), {}, &r1);
    const MilpModel b = build_model(testsupport::make_unit_instance(), {}, &r2);
    CHECK(write_mps_string(a) == write_mps_string(b));
    CHECK(r1.text() == r2.text());
    CHECK(!r1.text().empty());
}

TEST_CASE("builder tightens big-M constants from the data", "[builder]") {
    const MilpModel m = build_model(shape_instance("unit_valued"));

    SECTION("tank count gate uses the derived tank bound") {
        const Constraint& c = find_con(m, "eq9[e1,lc1,p1,ez1,t1]");
        CHECK(coeff_of(m, c, "n[p1,lc1,ez1,t1,e1]") == 1.0);
        CHECK(coeff_of(m, c, "z[lc1,ez1,t1,e1]") == -3.0);
        CHECK(c.rhs == 0.0);
    }
    SECTION("tank-total gate uses the summed tank bound") {
        const Constraint& c = find_con(m, "eq22[e1,lc1,p1,t1]");
        CHECK(coeff_of(m, c, "n[p1,lc1,ez1,t1,e1]") == 1.0);
        CHECK(coeff_of(m, c, "xl[lc1,el1,t1,e1]") == -3.0);
    }
    SECTION("shutdown exclusivity keeps its unit constant") {
        const Constraint& c = find_con(m, "eq17[e1,k1]");
        CHECK(coeff_of(m, c, "psik[k1,t1,e1]") == 1.0);
        CHECK(coeff_of(m, c, "tk[k1,uk1,t1,e1]") == 1.0);
        CHECK(c.rhs == 1.0);
    }
}

TEST_CASE("labor pool recursion switches form at the first period", "[builder]") {
    const MilpModel m = build_model(shape_instance("t2"));
    const Constraint& first = find_con(m, "eq82[en1,lev1,t1]");
    CHECK(first.sense == Sense::EQ);
    CHECK(first.expr.size() == 1);
    CHECK(coeff_of(m, first, "alab[en1,lev1,t1]") == 1.0);
    const Constraint& later = find_con(m, "eq82[en1,lev1,t2]");
    CHECK(later.expr.size() == 3);
    CHECK(coeff_of(m, later, "alab[en1,lev1,t2]") == 1.0);
    CHECK(coeff_of(m, later, "alab[en1,lev1,t1]") == -1.0);
    CHECK(coeff_of(m, later, "rlab[en1,lev1,t1]") == 1.0);
}

TEST_CASE("transfer-loop exclusion emits both orientations of each triple", "[builder]") {
    const MilpModel m = build_model(shape_instance("l3"));
    std::size_t rows = 0;
    for (const Constraint& c : m.constraints()) {
        if (c.name.rfind("eq68[", 0) != 0) continue;
        ++rows;
        CHECK(c.sense == Sense::LE);
        CHECK(c.rhs == 1.0);
        CHECK(c.expr.size() == 3);
        for (const auto& [id, v] : c.expr.terms()) {
            CHECK(v == 1.0);
            CHECK(m.var(id).name.rfind("s[", 0) == 0);
        }
    }
    CHECK(rows == 2); /* one unordered triple, two cyclic orientations */
    find_con(m, "eq68[e1,l1,l2,l3,t1,o1]");
    find_con(m, "eq68[e1,l1,l2,l3,t1,o2]");
}

TEST_CASE("labor weighting option rescales new-dc hires only", "[builder]") {
    ModelInstance inst = testsupport::make_unit_instance();
    inst.params.region_new_dc.ref(0, 0) = 1.0;
    inst.params.labor_transfer.ref(0, 0) = 0.25;

    BuildOptions printed; /* default weighting */
    const MilpModel a = build_model(inst, printed);
    CHECK(coeff_of(a, find_con(a, "eq86[e1,lc1,lev1,t1]"),
                   "henl[en1,lc1,en1,lev1,t1]") == -0.25);

    BuildOptions uniform;
    uniform.labor_weight = LaborWeight::Uniform;
    const MilpModel b = build_model(inst, uniform);
    CHECK(coeff_of(b, find_con(b, "eq86[e1,lc1,lev1,t1]"),
                   "henl[en1,lc1,en1,lev1,t1]") == -1.0);
}

TEST_CASE("builder refuses invalid instances and double builds", "[builder]") {
    ModelInstance bad = testsupport::make_unit_instance();
    bad.refinery_owner = {0}; /* wrong length */
    CHECK_THROWS_WITH(ModelBuilder(bad), Catch::Matchers::ContainsSubstring("failed validation"));

    ModelBuilder once(testsupport::make_unit_instance());
    MilpModel m = once.build();
    CHECK(m.frozen());
    CHECK_THROWS_AS(once.build(), Error);
    CHECK_THROWS_AS(m.add_var("extra", VarKind::Continuous), Error);
}

TEST_CASE("builder registers chain and per-stakeholder objectives", "[builder]") {
    const MilpModel m = build_model(shape_instance("e2"));
    CHECK(m.active_objective_name() == "profit");
    const auto& objs = m.objectives();
    for (const char* name : {"profit", "pollution", "social", "profit[e1]", "profit[e2]",
                             "pollution[e1]", "pollution[e2]", "social[e1]", "social[e2]"})
        CHECK(objs.count(name) == 1);
    CHECK(objs.size() == 9);
    CHECK(objs.at("profit").sense == ObjSense::Maximize);
    CHECK(objs.at("pollution").sense == ObjSense::Minimize);
    CHECK(objs.at("social").sense == ObjSense::Maximize);
}

TEST_CASE("all-zero data solves to an all-zero optimum", "[builder]") {
    const MilpModel m = build_model(shape_instance("novac"));
    const Solution sol = solve(m, SolverBackend::embedded());
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective_values.at("profit") == 0.0);
    CHECK(sol.objective_values.at("pollution") == 0.0);
    CHECK(sol.objective_values.at("social") == 0.0);
}
