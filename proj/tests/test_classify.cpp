#include "aalp/classify.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace aalp;

namespace {

std::set<std::string> golden(const std::string& name)
{
    std::ifstream in(std::string(AALP_GOLDEN_DIR) + "/" + name);
    std::set<std::string> rows;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line))
        if (!line.empty())
            rows.insert(line);
    return rows;
}

std::set<std::string> first_columns(const std::vector<ClassificationEntry>& v)
{
    std::set<std::string> rows;
    std::istringstream in(to_tsv(v));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::size_t cut = 0;
        for (int k = 0; k < 4; ++k)
            cut = line.find('\t', cut) + 1;
        rows.insert(line.substr(0, cut - 1));
    }
    return rows;
}

} // namespace

TEST(Classify, MaedaGolden)
{
    const auto v = enumerate_maeda(12);
    EXPECT_EQ(v.size(), 31u);
    EXPECT_EQ(first_columns(v), golden("maeda_n12.tsv"));
    for (const auto& e : v)
        EXPECT_EQ(e.strength, Strength::LogDP);
}

TEST(Classify, MaedaSmallN)
{
    EXPECT_EQ(enumerate_maeda(0).size(), 6u);
    EXPECT_EQ(enumerate_maeda(3).size(), 13u);
}

TEST(Classify, Rank2Golden)
{
    const auto v = enumerate_rank2(12);
    EXPECT_EQ(first_columns(v), golden("rank2_n12.tsv"));
    for (const auto& e : v) {
        const bool aldp_family = e.label.label.rfind("ALdP.", 0) == 0;
        EXPECT_EQ(e.strength == Strength::ALdPNotStrong, aldp_family) << e.label.display();
    }
}

TEST(Classify, Exclusions)
{
    for (const auto& e : enumerate_rank2(3)) {
        const auto& c = e.pair.classes;
        if (e.pair.plane || e.pair.n != 2)
            continue;
        EXPECT_NE(e.pair.classes_string(), "[(2,4)]");
        EXPECT_FALSE(c.size() == 3 && sorted(c) == sorted({{1, 0}, {1, 2}, {1, 2}}));
    }
}

TEST(Classify, MatchLabel)
{
    auto label = [](int n, std::vector<ClassCoord> cs) {
        CandidatePair c{false, n, cs};
        return match_label(c).display();
    };
    EXPECT_EQ(label(1, {{1, 0}, {0, 1}}), "II.2C.1");
    EXPECT_EQ(label(0, {{1, 1}, {1, 1}}), "II.4A");
    EXPECT_EQ(label(3, {{1, 0}, {0, 1}, {0, 1}, {1, 3}}), "ALdP.4.3");
    EXPECT_EQ(label(0, {{1, 0}, {0, 1}, {0, 1}, {1, 0}}), "IV");
    EXPECT_EQ(label(0, {{0, 1}, {1, 0}, {1, 0}}), "III.3.0");
}

TEST(Classify, Soundness)
{
    for (const auto& e : enumerate_rank2(6)) {
        const auto p = e.pair.to_pair();
        EXPECT_EQ(is_aldp(p), true);
        EXPECT_EQ(is_log_dp(p), e.strength == Strength::LogDP);
        EXPECT_EQ(is_strongly_aldp(p), e.strength != Strength::ALdPNotStrong);
    }
}

TEST(Classify, LargerBoxFindsNothingNew)
{
    // Sum a <= 4, Sum b <= n + 4, filtered only by admissibility and is_aldp
    for (int n = 0; n <= 4; ++n) {
        std::set<std::string> small, big;
        for (const auto& c : aldp_candidates(4))
            if (c.n == n && !c.plane)
                small.insert(c.classes_string());
        for (const auto& c : aldp_candidates(4, 4, 4))
            if (c.n == n && !c.plane)
                big.insert(c.classes_string());
        EXPECT_EQ(small, big) << "n = " << n;
    }
}

TEST(Classify, AtMostTwoFibersWithNonFiber)
{
    for (const auto& e : enumerate_rank2(12)) {
        if (e.pair.plane)
            continue;
        int fibers = 0;
        bool other = false;
        for (const auto& c : e.pair.classes) {
            if (c == ClassCoord{0, 1})
                ++fibers;
            else
                other = true;
        }
        EXPECT_TRUE(!other || fibers <= 2) << e.pair.classes_string();
    }
}

TEST(Classify, TsvDeterministic)
{
    const auto a = to_tsv(enumerate_rank2(4)), b = to_tsv(enumerate_rank2(4));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), tsv_header());
}
