#pragma once

// Frozen reference values shared by the unit tests
// and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

namespace para_test {

inline const std::string kMiceHateCats = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))";

inline const std::string kMiceHateCatsNumeric = "∀(1.1)∀(1.2)((P.1(1.1))∧(P.2(1.2))⊃(P.3(1.1,1.2)))";

inline const std::vector<std::vector<std::uint64_t>> kMiceHateCatsGrid = {
    {2, 32, 2, 96}, {0, 10, 32, 4, 14, 96}, {0, 6, 18, 32, 96}};

inline const std::vector<std::string> kMiceHateCatsRows = {
    "4:2:1:1:0:3:2:1:0:2:0:2:1:1:0:3:3:0:2:0:1:1:0",
    "6:1:0:2:2:0:1:1:1:3:2:1:0:2:0:2:1:1:1:2:3:0:1:1:0:1:1:3:3:0:1:0:2:1:0",
    "5:1:0:2:2:0:0:0:1:3:1:0:1:3:2:1:0:2:0:3:3:0:2:0:1:1:0",
};

inline const std::string kCube3PerRow =
    "3:2:1:1:0:3:2:1:0:2:0:2:1:1:0:1:0:2:2:0:1:1:1:3:2:1:0:2:0:1:0:2:2:0:0:0:1:3:1:0:1";

inline const std::string kCube6PerRow =
    "3:2:1:1:0:3:2:1:0:2:0:2:1:1:0:3:3:0:2:0:1:1:0:1:0:1:0:1:0:2:2:0:1:1:1:3:2:1:0:2:0:2:1:1:1:2:3:0:1:1:0:1:1:3:3:"
    "0:1:0:2:1:0:1:0:2:2:0:0:0:1:3:1:0:1:3:2:1:0:2:0:3:3:0:2:0:1:1:0:1:0";

inline const std::string kPattern96 = "1:3:3:1:0:0:1:0:2";

// The enumeration listing for codes 1..15, separators dropped.
inline const std::vector<std::string> kEnumerationListing = {
    "n: 4 k: 1 p: 1, c: 1. (0,0)",
    "n: 4 k: 1 p: 2, c: 1. (1,0)",
    "n: 4 k: 1 p: 3, c: 1. (0,1)",
    "n: 4 k: 1 p: 4, c: 1. (1,1)",
    "n: 4 k: 2 p: 5, c: 1. (0,0) 2. (1,0)",
    "n: 4 k: 2 p: 6, c: 1. (0,0) 2. (0,1)",
    "n: 4 k: 2 p: 7, c: 1. (0,0) 2. (1,1)",
    "n: 4 k: 2 p: 8, c: 1. (1,0) 2. (0,1)",
    "n: 4 k: 2 p: 9, c: 1. (1,0) 2. (1,1)",
    "n: 4 k: 2 p: 10, c: 1. (0,1) 2. (1,1)",
    "n: 4 k: 3 p: 11, c: 1. (0,0) 2. (1,0) 3. (0,1)",
    "n: 4 k: 3 p: 12, c: 1. (0,0) 2. (1,0) 3. (1,1)",
    "n: 4 k: 3 p: 13, c: 1. (0,0) 2. (0,1) 3. (1,1)",
    "n: 4 k: 3 p: 14, c: 1. (1,0) 2. (0,1) 3. (1,1)",
    "n: 9 k: 1 p: 15, c: 1. (0,0)",
};

inline const std::string kSocratesProlog = "man(socrates).\nmortal(X) :- man(X).\n";

inline const std::string kSocratesLean =
    "variables (Man : Type)  (mortal : Man → Prop)\n"
    "\n"
    "theorem MortalSocrates (socrates : Man) (h: (∀ x : Man, mortal x)) : (mortal socrates) :=";

inline const std::string kBarberLeanHypothesis = "(h : ∃ x : Man,  ∀ y : Man, shaves x y ↔ ¬ shaves y y ) : false";

inline const std::string kBarber =
    "exists Man.x (Man(x) & forall Man.y (Man(y) -> (Shaves(x,y) <-> ~Shaves(y,y))))";

}  // namespace para_test
