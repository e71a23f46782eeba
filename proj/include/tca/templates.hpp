#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "tca/rng.hpp"

namespace tca::bank {

// One clinical role per covariate coordinate (cycled when d_x > 15).
inline constexpr std::array<std::string_view, 15> kRoles = {
    "heart rate",       "blood pressure", "glucose",        "creatinine",
    "sodium",           "hemoglobin",     "respiratory rate", "platelet count",
    "bicarbonate",      "urea",           "hematocrit",     "anion gap",
    "red cell count",   "oxygen saturation", "temperature",
};

// Single-token keys for the structured factual family.
inline constexpr std::array<std::string_view, 15> kRoleKeys = {
    "pulse",       "pressure",  "glucose",     "creatinine", "sodium",
    "hemoglobin",  "breathing", "platelets",   "bicarbonate", "urea",
    "hematocrit",  "aniongap",  "redcells",    "oxygen",     "temperature",
};

inline constexpr std::array<std::string_view, 2> kFactualIntros = {
    "patient record summary follows.",
    "structured patient values follow.",
};
inline constexpr std::array<std::string_view, 2> kNarrativeIntros = {
    "clinical narrative for the patient.",
    "summary of the clinical picture.",
};
inline constexpr std::array<std::string_view, 2> kSymptomIntros = {
    "patient message:",
    "self reported note:",
};

// Narrative phrases indexed [bin][synonym]; {} is replaced by the role name.
inline constexpr std::array<std::array<std::string_view, 2>, 3> kNarrativeSkeletons = {{
    {{"the {} runs well below the usual range",
      "a clearly reduced {} was noted on review"}},
    {{"the {} stays within the expected range",
      "an unremarkable {} was recorded"}},
    {{"the {} runs well above the usual range",
      "a markedly elevated {} was noted on review"}},
}};

// First-person symptom phrases indexed [role][bin][synonym].
inline constexpr std::array<std::array<std::array<std::string_view, 2>, 3>, 15> kSymptomPhrases = {{
    // heart rate
    {{{{"my pulse feels weak and sluggish", "my heartbeat seems unusually slow"}},
      {{"my heartbeat feels steady", "my pulse seems ordinary"}},
      {{"my heart is racing", "my heart keeps pounding in my chest"}}}},
    // blood pressure
    {{{{"i feel faint whenever i stand up", "i get lightheaded standing up"}},
      {{"i do not notice my circulation at all", "no dizziness or pressure to speak of"}},
      {{"i get pounding headaches and flushed cheeks", "there is a constant pressure in my head"}}}},
    // glucose
    {{{{"i get shaky and sweaty between meals", "i turn trembly if i skip a snack"}},
      {{"my appetite and energy seem ordinary", "meals sit fine with me"}},
      {{"i am always thirsty and keep needing the bathroom", "no amount of water quenches my thirst"}}}},
    // creatinine
    {{{{"i feel fine though i urinate quite often", "i pass water more often than before"}},
      {{"no trouble passing water", "nothing unusual in the bathroom"}},
      {{"i am puffy around the ankles and barely pass water", "my legs are swollen and urine is scarce"}}}},
    // sodium
    {{{{"i feel foggy and queasy", "my head feels clouded and i am nauseous"}},
      {{"i feel mentally clear", "my thinking feels normal"}},
      {{"i am parched and my mouth is dry", "an intense thirst keeps bothering me"}}}},
    // hemoglobin
    {{{{"i am pale and exhausted by small efforts", "climbing a flight of stairs wipes me out"}},
      {{"my energy is about usual", "i feel reasonably energetic"}},
      {{"my face looks flushed and ruddy", "my skin has a deep red colour lately"}}}},
    // respiratory rate
    {{{{"my breathing feels slow and shallow", "i barely seem to breathe at rest"}},
      {{"my breathing feels easy", "breathing comes without effort"}},
      {{"i am short of breath even sitting still", "i keep gasping for air"}}}},
    // platelet count
    {{{{"i bruise at the slightest touch", "small knocks leave big bruises on me"}},
      {{"no unusual bruising", "cuts heal as they always did"}},
      {{"my skin feels tight and i worry about clots", "my calves ache as if clotted"}}}},
    // bicarbonate
    {{{{"my breathing is deep and i feel off balance", "i keep sighing deep breaths and feel unsettled"}},
      {{"i feel chemically balanced so to speak", "no strange sensations to report"}},
      {{"i feel sluggish with slow shallow breathing", "i am drowsy and my breaths are light"}}}},
    // urea
    {{{{"i feel washed out and have no appetite", "food has lost all appeal and i am weary"}},
      {{"my appetite is normal", "i eat as usual"}},
      {{"there is a metallic taste and my skin itches", "i itch all over and taste metal"}}}},
    // hematocrit
    {{{{"i look pale and feel chilled", "people say i look white as a sheet"}},
      {{"my colour looks normal", "my complexion seems usual"}},
      {{"my face is ruddy and i get headaches", "i look flushed and my head throbs"}}}},
    // anion gap
    {{{{"i feel mildly unwell in a vague way", "something feels faintly off"}},
      {{"i feel generally fine", "nothing specific bothers me"}},
      {{"i feel poisoned somehow with racing breath", "i feel deeply unwell and breathe fast"}}}},
    // red cell count
    {{{{"i am tired and dizzy when standing", "standing up makes the room spin"}},
      {{"my stamina is about usual", "my endurance seems normal"}},
      {{"my fingers tingle and my face is flushed", "my hands prickle and look red"}}}},
    // oxygen saturation
    {{{{"my lips look bluish and i feel winded", "i feel starved of air and my lips darken"}},
      {{"i breathe comfortably", "air feels plentiful"}},
      {{"i feel oddly wired and breathe quickly", "i am restless with quick breaths"}}}},
    // temperature
    {{{{"i cannot stop shivering", "i feel cold to the bone"}},
      {{"my temperature feels normal", "i feel neither hot nor cold"}},
      {{"i am burning up and sweating", "i feel feverish and damp with sweat"}}}},
}};

// Neutral narrative padding; carries no covariate information.
inline constexpr std::array<std::string_view, 12> kFillers = {
    "otherwise the day to day routine has carried on much as before without major interruption",
    "sleep has been broken now and then though it is hard to say exactly why",
    "there has been no recent travel and no changes to the household situation",
    "meals are taken at the usual times and hydration has been kept up reasonably well",
    "no new medications have been started recently beyond what was already prescribed",
    "family members have not remarked on anything beyond what is described here",
    "work and light chores continue although with somewhat more effort than usual",
    "there is no clear pattern to when the complaints feel better or worse",
    "weather changes do not seem to make any obvious difference to the complaints",
    "previous clinic visits did not flag anything that seemed related to the present picture",
    "the overall mood has stayed fairly level despite the discomfort described above",
    "no falls or injuries have occurred in the recent weeks worth mentioning",
};

// Checksum over every string in the bank; golden-file tests pin this so
// surface text cannot drift under fixtures.
inline std::uint64_t checksum() {
    std::uint64_t h = kFnvOffset;
    auto eat = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= kFnvPrime;
        }
        h ^= 0x1e;
        h *= kFnvPrime;
    };
    for (auto s : kRoles) eat(s);
    for (auto s : kRoleKeys) eat(s);
    for (auto s : kFactualIntros) eat(s);
    for (auto s : kNarrativeIntros) eat(s);
    for (auto s : kSymptomIntros) eat(s);
    for (const auto& bin : kNarrativeSkeletons)
        for (auto s : bin) eat(s);
    for (const auto& role : kSymptomPhrases)
        for (const auto& bin : role)
            for (auto s : bin) eat(s);
    for (auto s : kFillers) eat(s);
    return h;
}

}  // namespace tca::bank
