#include <gtest/gtest.h>

#include "holo/io.hpp"
#include "holo/registry.hpp"

using namespace holo;

namespace {

void expect_all_pass(const std::vector<VerifyReport>& rs) {
    for (const auto& r : rs) {
        const IdentityRecord& rec = find_identity(r.id);
        if (rec.gating)
            EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.detail;
        else
            EXPECT_EQ(r.status, Status::Diagnostic) << r.id;
    }
}

}  // namespace

TEST(Registry, SortedUniqueIds) {
    const auto& recs = registry();
    for (size_t i = 1; i < recs.size(); ++i) EXPECT_LT(recs[i - 1].id, recs[i].id);
    for (const auto& r : recs) EXPECT_FALSE(r.anchor.empty()) << r.id;
}

TEST(Registry, Kinds) {
    long rational = 0;
    for (const auto& r : registry()) {
        if (r.kind == "rational") {
            ++rational;
            EXPECT_EQ(r.default_order, 0) << r.id;
        }
    }
    EXPECT_EQ(rational, 21);
    EXPECT_FALSE(find_identity("u-u1-intertwiners").gating);
    EXPECT_FALSE(find_identity("c6-relation-spotcheck").gating);
    EXPECT_THROW(find_identity("no-such-identity"), PreconditionError);
}

TEST(Registry, RunAllPasses) {
    auto rs = run_all();
    EXPECT_EQ(rs.size(), registry().size());
    expect_all_pass(rs);
    EXPECT_FALSE(gating_failure(rs));
}

TEST(Registry, Deterministic) {
    auto a = run_all(), b = run_all();
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_json(a[i]), to_json(b[i])) << a[i].id;
}

TEST(Registry, DoubledOrders) {
    std::map<std::string, long> ov;
    for (const auto& r : registry())
        if (r.default_order) ov[r.id] = 2 * r.default_order;
    expect_all_pass(run_all(ov));
}

TEST(Registry, SmallOrders) {
    std::map<std::string, long> ov;
    for (const auto& r : registry())
        if (r.default_order) ov[r.id] = 5;
    expect_all_pass(run_all(ov));
    EXPECT_THROW(run_all({{"no-such-identity", 10}}), PreconditionError);
}

TEST(Registry, OrderIsReported) {
    EXPECT_EQ(run_identity("ramanujan-eta", 300).order, 300);
    EXPECT_EQ(run_identity("x02-parametrization", 300).order, 0);
}
