#pragma once

// Values computed once with mpmath at 60 significant digits (besselj, and a
// direct c-sum of the Petersson series to c = 400) and frozen here.

namespace frozen {

inline constexpr const char* kJ100at100 = "0.0963666732958615596743140248704018483117554198250218559179735";
inline constexpr const char* kJ301at295 = "0.0217166477132204502549679901275029204864462358200274968308462";
inline constexpr const char* kJ1000at1000 = "0.044730672947964040880597580568215654573247699099480507799079";
// J_216(216 + 0.5 * 216^{1/3}) = J_216(219)
inline constexpr const char* kJ216Transition = "0.104616846281391052711595997679247783892824759485737059179487";
// J_1000(1000 - 0.9 * 1000^{1/3}) = J_1000(991)
inline constexpr const char* kJ1000at991 = "0.014483062707979124785910498504812662398484023800495530735334";

// Delta_{12,1}(1,1) and Delta_{68,5}(1,3^6).
inline constexpr const char* kDelta12 = "2.84028737516750049186251859024";
inline constexpr const char* kDelta68 = "0.430042521441029869767218526773";

}  // namespace frozen
