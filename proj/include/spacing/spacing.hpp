#pragma once

// Spacing shifts: words, spacing sets, languages, the two counterexample
// constructions, transitivity witness search and JSON certificates.

#include "spacing/bigint.hpp"
#include "spacing/certificate.hpp"
#include "spacing/constructions.hpp"
#include "spacing/language.hpp"
#include "spacing/parallel_scan.hpp"
#include "spacing/serialize.hpp"
#include "spacing/set_verdicts.hpp"
#include "spacing/spacing_set.hpp"
#include "spacing/transitivity.hpp"
#include "spacing/verdict.hpp"
#include "spacing/word.hpp"
