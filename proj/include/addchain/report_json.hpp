#pragma once

#include <json.hpp>

#include "addchain/analysis.hpp"
#include "addchain/bounds.hpp"
#include "addchain/counting.hpp"
#include "addchain/family.hpp"
#include "addchain/search.hpp"

namespace addchain::json {

using Json = nlohmann::ordered_json;

Json values(const Chain& chain);

/// {"n","ell","witness"}; `verbose` adds exact, nodes_expanded, prunings and
/// the annotated chain.
Json search_result(const SearchResult& r, bool verbose = false);
Json bound_report(const BoundReport& r);
Json scholz_report(const ScholzReport& r);
Json envelope(const TheoremEnvelope& e);
Json h_result(const HResult& r);
Json count_result(const CountResult& r);
/// {"m","total","histogram":[{"ell","count","cumulative"}]}
Json histogram(int m, const EllHistogram& h);

Json taxonomy(const StepTaxonomy& tax);
Json inequality(const InequalityReport& r);
Json lemma1(const Lemma1Report& r);
Json lemma2(const Lemma2Report& r);
Json lemma3(const Lemma3Report& r);
Json blocks(const BlockStructure& b);
Json domination(const DominationVerdict& v);

Json family_params(const FamilyParams& p);
Json family_instance(const FamilyInstance& inst);
Json family_size(const FamilyParams& p, const FamilySize& s);
Json param_choice(const ParamChoice& c);

}  // namespace addchain::json
