#ifndef TESTS_SUPPORT_FIXTURES_HPP
#define TESTS_SUPPORT_FIXTURES_HPP

#include <set>
#include <string>
#include <utility>

#include "proofnet/frame.hpp"

namespace fixtures {

// The Dutch worked example: "De strategie die ze volgen is eeuwenoud".
inline const char* kDutchSequent =
    "goal: s_main\n"
    "de\t[det](n -o np)\n"
    "strategie\tn\n"
    "die\t<body>(<obj> pron -o s_sub) -o [mod](np -o np)\n"
    "ze\tpron\n"
    "volgen\t<obj> pron -o <su> pron -o s_sub\n"
    "is\t<predc> adj -o <su> np -o s_main\n"
    "eeuwenoud\tadj\n";

inline const std::set<std::pair<std::size_t, std::size_t>> kDutchLinks = {
    {0, 2}, {11, 14}, {15, 13}, {4, 10}, {8, 3}, {9, 7}, {5, 1}, {12, 6}};

inline const char* kDutchFlattened =
    "[SOS] [det] n np [SEP] n [SEP] <body> <obj> pron s_sub [mod] np np [SEP] pron [SEP] "
    "<obj> pron <su> pron s_sub [SEP] <predc> adj <su> np s_main [SEP] adj [SEP]";

inline proofnet::ProofFrame dutch_frame() {
  proofnet::Vocabulary vocab = proofnet::Vocabulary::defaults();
  proofnet::Type goal = proofnet::Type::atomic(proofnet::Atom("s", "main"));
  auto premises = proofnet::parse_sequent_text(kDutchSequent, vocab, &goal);
  return proofnet::build_frame(premises, goal);
}

}  // namespace fixtures

#endif  // TESTS_SUPPORT_FIXTURES_HPP
