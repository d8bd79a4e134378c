#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holo/series.hpp"

// printed coefficients, frozen as strings so that big integers stay exact
namespace holo::golden {

// y0, coefficients of x^0..x^12
inline const std::vector<std::string> y0{"1",
                                         "16",
                                         "1296",
                                         "160000",
                                         "24010000",
                                         "4032758016",
                                         "728933458176",
                                         "138735983333376",
                                         "27435582641610000",
                                         "5588044012339360000",
                                         "1165183173971324375296",
                                         "247639903129149250277376",
                                         "53472066459540320483696896"};

// analytic parts of the first three log solutions, from x^1
inline const std::vector<std::string> t1{"64", "6048", "2368000/3", "365638000/3", "104147576064/5", "19045884743424/5",
                                         "25588111188676608/35"};
inline const std::vector<std::string> t2{"32", "5832", "8182400/9", "1374099650/9", "685097536032/25", "129379065232032/25"};
inline const std::vector<std::string> t3{"-64", "-4296", "-10334080/27", "-1110845155/27"};

// nome, x^1..x^18
inline const std::vector<std::string> nome{"1",
                                           "64",
                                           "7072",
                                           "991232",
                                           "158784976",
                                           "27706373120",
                                           "5130309889536",
                                           "992321852604416",
                                           "198452570147492456",
                                           "40747727123371117056",
                                           "8546896113440681326848",
                                           "1824550864289064534212608",
                                           "395291475348616441757137536",
                                           "86723581205125308226931367936",
                                           "19233461618939530038756686458880",
                                           "4305933457394032994320115176046592",
                                           "972002126960220578680860300103711764",
                                           "221026060926103071799983313019509871872"};

// mirror map, q^1..q^18
inline const std::vector<std::string> mirror{"1",
                                             "-64",
                                             "1120",
                                             "-38912",
                                             "-1536464",
                                             "-177833984",
                                             "-19069001216",
                                             "-2183489257472",
                                             "-260277863245160",
                                             "-32040256686713856",
                                             "-4047287910219320576",
                                             "-522186970689013088256",
                                             "-68573970045596462152576",
                                             "-9140875458960295169327104",
                                             "-1234198194801672701733531648",
                                             "-168503147864931724540942221312",
                                             "-23230205873245591254063032928212",
                                             "-3230146419442584387013916457526784"};

// Yukawa coupling, q^0..q^18
inline const std::vector<std::string> yukawa{"1",
                                             "32",
                                             "4896",
                                             "702464",
                                             "102820640",
                                             "15296748032",
                                             "2302235670528",
                                             "349438855544832",
                                             "53378019187206944",
                                             "8194222260681725696",
                                             "1262906124008518928896",
                                             "195269267971549608656896",
                                             "30273112887215918307768320",
                                             "4703886698057200436126953472",
                                             "732300206865552210649383895040",
                                             "114192897568357606610746318782464",
                                             "17832557144166657247747889907477280",
                                             "2788280197510341680209147877101177216",
                                             "436459641692984506336508940737030913792"};

// power family of the nome: exponent m, then (exponent, coefficient) pairs
struct FamilyMember {
    long m;
    std::vector<std::pair<long, long>> terms;
};
inline const std::vector<FamilyMember> family{
    {2, {{2, 1}, {3, 128}, {4, 18240}, {5, 2887680}}},
    {3, {{3, 1}, {4, 192}, {5, 33504}}},
    {-1, {{-1, 1}, {0, -64}, {1, -2976}, {2, -348160}}},
    {-2, {{-2, 1}, {-1, 128}, {0, -1856}, {1, -315392}}},
};

// w-series, nonzero terms (exponent, coefficient)
inline const std::vector<std::pair<long, long>> w_terms{{0, 1}, {8, 16}, {10, 512}, {12, 11264}, {14, 212992}, {16, 3728656}};

// compares coefficients of f at exponents first, first+1, ... with the printed list
inline bool matches(const PowerSeries& f, long first, const std::vector<std::string>& printed, std::string* why = nullptr) {
    for (size_t i = 0; i < printed.size(); ++i) {
        long n = first + static_cast<long>(i);
        Rational want = parse_rational(printed[i]);
        if (f.coeff(n) != want) {
            if (why) *why = "exponent " + std::to_string(n) + ": got " + to_string(f.coeff(n)) + ", printed " + printed[i];
            return false;
        }
    }
    return true;
}

}  // namespace holo::golden
