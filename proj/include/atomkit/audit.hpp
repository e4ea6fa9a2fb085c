#pragma once

// Bounded verification of the site conditions over a backend.

#include <string>
#include <vector>

#include "atomkit/site.hpp"
#include "atomkit/verdict.hpp"

namespace atomkit {

enum class Condition { c1_amalgamation, c1_regular_mono, c2prime, c3, c4 };

std::string to_string(Condition c);

struct AuditInstance {
  std::string key;  // enough to rebuild the inputs
  CheckVerdict verdict;
};

struct AuditReport {
  Condition condition;
  Backend backend;
  std::size_t bound = 0;
  nlohmann::json bound_detail;  // the object family that was enumerated
  std::vector<AuditInstance> instances;
  nlohmann::json summary = nlohmann::json::object();

  std::size_t count(Status s) const;
  bool all_pass() const { return count(Status::pass) == instances.size(); }
  nlohmann::json to_json(bool with_instances = true) const;
  std::string table() const;
};

/// Object family for an audit bound: finite sets of size at most bound;
/// trees with at most bound tails and 2*bound+1 explicit nodes over the
/// first bound labels of i, j, k, ... Bound 0 is the empty family.
std::vector<ObjectRef> audit_objects(Backend b, std::size_t bound);

/// Amalgamation of every span and a regular-mono witness for every arrow.
std::vector<AuditReport> audit_c1(Backend b, std::size_t bound);
AuditReport audit_c2prime(Backend b, std::size_t bound);
/// Rank decrease along every proper subobject within the bound, and the
/// longest chain of proper subobjects.
AuditReport audit_c3(Backend b, std::size_t bound);
/// Rank decrease along one explicit chain of subobjects, largest first.
AuditReport audit_c3_chain(const std::vector<ObjectRef>& chain);
AuditReport audit_c4(Backend b, std::size_t bound);

struct ParallelExtension {
  ObjectRef Y;
  Morphism f_prime;      // X -> Y
  Morphism alpha_prime;  // B -> Y
  Morphism beta_prime;   // B -> Y
};

/// Given f : A -> B and alpha, beta : A => X, builds f' : X -> Y and
/// alpha', beta' : B => Y with alpha f' = f alpha' and beta f' = f beta', by
/// two amalgamations, or by one when alpha = beta.
ParallelExtension extend_parallel_pair(const Morphism& f, const Morphism& alpha, const Morphism& beta);

}  // namespace atomkit
