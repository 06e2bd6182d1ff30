#pragma once

#include <string>
#include <vector>

#include "pafas/term.hpp"

namespace pafas {

/// Read-set term to read-action term. Each read set becomes a chain of read
/// prefixes in canonical action order. Throws ImproperInput unless proper.
Term s_to_r(const Term& q);

/// One entry per action name; an urgent copy wins over a lazy one.
ReadSetActions merge_read_actions(const std::vector<Action>& actions);

/// Read-action term in read normal form to read-set term. Every maximal
/// chain of read prefixes is collected in one merged read set. Throws NotRnf.
Term r_to_s(const Term& q);

enum class LawId { L1, L2, L3, L4, L5, L6, L7, DetChoice, Rename };

std::string to_string(LawId law);
/// Accepts `L1`..`L7`, `DetChoice`, `Rename` (case-insensitive).
LawId parse_law(const std::string& text);

/// Rewrites the subterm at `path` left-to-right by `law`.
///   L1  mu |> (nu |> Q)          ->  nu |> (mu |> Q)
///   L2  a |> (mu |> Q)           ->  mu |> Q          (mu in {a, !a})
///       !a |> (mu |> Q)          ->  !a |> Q
///   L3  (mu |> Q) + R            ->  mu |> (Q + R)
///   L4  a |> (Q1 |[A]| Q2)       ->  (a |> Q1) |[A+a]| (a |> Q2)   (a not in sort)
///   L5  (a |> Q)[F]              ->  F(a) |> Q[F]
///   L6  Q[F][G]                  ->  Q[G o F]
///   L7  rec x. Q                 ->  Q{rec x. Q / x}
///   DetChoice  Q + (R1 |[A]| R2) ->  (Q + R1) |[A + sort Q]| (Q + R2)
///              (Q deterministic, sort Q disjoint from the other summand)
///   Rename     S                 ->  S'[r^-1] with every visible name of S
///              replaced by a fresh copy
/// Throws NoMatch if the redex has the wrong shape, SideConditionViolated if
/// a side condition fails.
Term apply_law(const Term& q, LawId law, const Path& path = {});

/// Right-hand side of the deterministic-choice law without checking its
/// side conditions; used to exhibit where the law breaks.
Term det_choice_expansion(const Term& q, const Term& r1, const NameSet& sync, const Term& r2);

/// Consistently renames visible names (actions, read sets, sync sets and
/// both sides of relabellings).
Term rename_actions(const Term& t, const std::map<std::string, std::string>& renaming);

/// Bisimilar term in read normal form, for inputs whose choice and recursion
/// subterms are already RNF. A read prefix over a parallel composition is
/// distributed with a fresh action that a trailing relabelling maps back; a
/// read prefix over a relabelling is pushed inside; a read prefix over a
/// recursion that is not read-guarded unfolds it. Throws OutsideFragment.
Term normalize_to_rnf(const Term& q);

} // namespace pafas
