// Shared helpers for the test suites.
#ifndef DSCPSC_TESTS_SUPPORT_HPP
#define DSCPSC_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "dscpsc/instance.hpp"

namespace testsupport {

/* Temporary directory that cleans up after itself. */
struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/dscpsc-test-XXXXXX";
        if (!mkdtemp(tmpl)) throw std::runtime_error("mkdtemp failed");
        path = tmpl;
    }
    ~TempDir() {
        const std::string cmd = "rm -rf '" + path + "'";
        const int rc = std::system(cmd.c_str());
        (void)rc;
    }
    std::string file(const std::string& name) const { return path + "/" + name; }
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/* Fill every parameter table with zeros of the right shape for `sets`, then
 * apply the minimal non-zero defaults the validation rules insist on. */
inline dscpsc::ModelInstance make_blank_instance(dscpsc::InstanceSets sets,
                                                 std::vector<int> owner,
                                                 std::vector<std::vector<int>> users,
                                                 const std::string& name) {
    using namespace dscpsc;
    ModelInstance inst;
    inst.name = name;
    inst.sets = std::move(sets);
    for (const auto& info : table_registry()) {
        std::vector<std::size_t> shape;
        for (Ax ax : info.axes) shape.push_back(axis_size(ax, inst.sets));
        inst.params.*(info.member) = Table::zeros(shape);
    }
    for (double& v : inst.params.mu.data) v = 1.0; /* rule: positive */
    inst.params.big_m = 1e6;
    inst.params.tpp = 1.0;
    inst.refinery_owner = std::move(owner);
    inst.dc_users = std::move(users);
    return inst;
}

/* Smallest fully-populated instance: every set a singleton (two modes so a
 * pipeline and a road mode both exist), all tables zero except where a rule
 * demands otherwise.  Validates cleanly. */
inline dscpsc::ModelInstance make_unit_instance() {
    using namespace dscpsc;
    InstanceSets s;
    s.refineries = {"k1"};
    s.candidate_refineries = {"kc1"};
    s.dcs = {"l1"};
    s.candidate_dcs = {"lc1"};
    s.customers = {"m1"};
    s.modes = {"road", "pipe"};
    s.pipeline_mode = "pipe";
    s.mode_capacity_levels = {"cv1"};
    s.products = {"p1"};
    s.refinery_build_levels = {"ek1"};
    s.dc_build_levels = {"el1"};
    s.refinery_expansion_levels = {"uk1"};
    s.dc_expansion_levels = {"ul1"};
    s.pipeline_expansion_levels = {"ev1"};
    s.tank_levels = {"ez1"};
    s.pipeline_build_levels = {"lv1"};
    s.pipeline_routes = {"rv1"};
    s.stakeholders = {"e1"};
    s.regions = {"en1"};
    s.education_levels = {"lev1"};
    s.periods = {"t1"};
    s.fields = {"i1"};

    return make_blank_instance(std::move(s), {0, 0}, {{0}, {0}}, "unit");
}

} // namespace testsupport

#endif
