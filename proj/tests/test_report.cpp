// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/report.hpp>
#include <newton_circle/verify.hpp>

#include <gtest/gtest.h>

using namespace nc;

TEST(Report, EmptyChecksSerializeAsEmptyArray) {
    VerificationReport rep;
    rep.command = "noop";
    auto const j = rep.to_json();
    EXPECT_TRUE(j["checks"].is_array());
    EXPECT_TRUE(j["checks"].empty());
    EXPECT_TRUE(rep.all_pass());
    EXPECT_EQ(rep.to_csv(), "name,pass,lhs,rhs,tolerance\n");
}

TEST(Report, ComparisonsAndFailureSerialization) {
    VerificationReport rep;
    EXPECT_TRUE(rep.check_le("le", 1.0, 1.0).pass);
    EXPECT_TRUE(rep.check_le("le tol", 1.05, 1.0, 0.1).pass);
    EXPECT_FALSE(rep.check_le("le fail", 2.0, 1.0).pass);
    EXPECT_FALSE(rep.check_le("nan", std::nan(""), 1.0).pass);
    EXPECT_TRUE(rep.check_near("near", 1.0, 1.0 + 1e-13, 1e-12).pass);
    EXPECT_FALSE(rep.check_true("bool", false).pass);
    EXPECT_EQ(rep.failures(), 3u);
    EXPECT_FALSE(rep.all_pass());
    auto const j = rep.to_json();
    EXPECT_EQ(j["checks"][2]["pass"], false);
    EXPECT_EQ(j["checks"][2]["name"], "le fail");
}

TEST(Report, CsvQuotesNamesWithCommas) {
    VerificationReport rep;
    rep.check_le("a, \"b\"", 0.5, 1.0);
    EXPECT_EQ(rep.to_csv(), "name,pass,lhs,rhs,tolerance\n\"a, \"\"b\"\"\",true,0.5,1,0\n");
}

TEST(Report, MergeKeepsOrder) {
    VerificationReport a, b;
    a.check_true("first", true);
    b.check_true("second", true);
    b.results.push_back({{"x", 1}});
    a.merge(b);
    ASSERT_EQ(a.checks.size(), 2u);
    EXPECT_EQ(a.checks[1].name, "second");
    EXPECT_EQ(a.results.size(), 1u);
}

TEST(Suites, RegistryNamesAndUnknownName) {
    std::vector<std::string> names;
    for (auto const& [n, fn] : suites()) names.push_back(n);
    EXPECT_EQ(names.size(), 10u);
    EXPECT_EQ(names.front(), "moment");
    EXPECT_EQ(names.back(), "major_arc");
    EXPECT_THROW(run_suite("missing"), ContractError);
}

TEST(Suites, FastSuitesPass) {
    EXPECT_TRUE(run_suite("equidistribution").all_pass());
    EXPECT_TRUE(run_suite("factorization").all_pass());
    SuiteOptions opt;
    opt.rhos = {Rational(1, 2)};
    opt.lmax = 2;
    EXPECT_TRUE(run_suite("iw", opt).all_pass());
}
