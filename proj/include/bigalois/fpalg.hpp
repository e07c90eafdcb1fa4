#pragma once

// Finitely presented algebras and bounded-degree ideal calculus.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bigalois/freealg.hpp"

namespace bigalois {

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// The quotient of the free algebra on `alphabet` by the two-sided ideal
/// generated by `relations`.
class Presentation {
 public:
  Presentation(std::string name, AlphabetPtr alphabet, std::vector<NcPoly> relations);

  const std::string& name() const { return name_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<NcPoly>& relations() const { return relations_; }
  int max_relation_degree() const;

  /// Set for presentations built by tensor_presentation: letters below
  /// `split` come from the left factor.
  struct TensorInfo {
    PresentationPtr left;
    PresentationPtr right;
    std::size_t split = 0;
  };
  const std::optional<TensorInfo>& tensor() const { return tensor_; }

 private:
  friend PresentationPtr tensor_presentation(const PresentationPtr&, const PresentationPtr&);

  std::string name_;
  AlphabetPtr alphabet_;
  std::vector<NcPoly> relations_;
  std::optional<TensorInfo> tensor_;
};

PresentationPtr make_presentation(std::string name, AlphabetPtr alphabet,
                                  std::vector<NcPoly> relations);

/// The ground field as a presented algebra: no letters, no relations.
PresentationPtr scalar_presentation();

/// coefficient * left * relation * right
struct WitnessTerm {
  Word left;
  std::size_t relation = 0;
  Word right;
  Scalar coefficient;
};

struct MembershipVerdict {
  bool member = false;
  int bound = 0;  ///< degree bound the verdict refers to
  std::vector<WitnessTerm> witness;

  static MembershipVerdict unknown(int d) { return {false, d, {}}; }
};

/// Sum of the witness terms inside the free algebra of `p`.
NcPoly reconstruct(const Presentation& p, const std::vector<WitnessTerm>& witness);

/// Largest degree of any witness term (-1 for an empty witness).
int witness_degree(const Presentation& p, const std::vector<WitnessTerm>& witness);

struct ResourceLimits {
  std::size_t max_rows = 2'000'000;  ///< generators u*r*v considered
};

/// Cumulative dimensions of (words of length <= k) / (span of u*r*v of total
/// degree <= k) for k = 0..d.
std::vector<std::uint64_t> quotient_dim_bounded(const PresentationPtr& p, int d,
                                                const ResourceLimits& limits = {});

/// Searches for f = sum c * u * r * v with every term of degree <= d. A
/// negative answer only means no certificate exists at this bound.
MembershipVerdict ideal_membership_bounded(const PresentationPtr& p, const NcPoly& f, int d,
                                           const ResourceLimits& limits = {});

/// Left letters then right letters (right names primed on clashes); relations
/// of both factors followed by the commutators x*y - y*x.
PresentationPtr tensor_presentation(const PresentationPtr& left, const PresentationPtr& right);

/// Same letters, every relation word reversed.
PresentationPtr opposite_presentation(const PresentationPtr& p);

enum class Variance { Morphism, AntiMorphism };

/// A map on generators; AntiMorphism reverses products (a morphism into the
/// opposite of the target).
struct MorphismSpec {
  std::string name;
  PresentationPtr source;
  PresentationPtr target;
  std::vector<NcPoly> images;  ///< one per source letter, over the target alphabet
  Variance variance = Variance::Morphism;
};

/// Image of a source polynomial in the free algebra of the target.
NcPoly apply_morphism(const MorphismSpec& m, const NcPoly& f);

struct RelationCheck {
  std::size_t relation = 0;
  NcPoly image;
  MembershipVerdict verdict;
};

struct MorphismCertificate {
  std::string name;
  bool certified = false;
  int bound = 0;
  std::vector<RelationCheck> relations;
};

MorphismCertificate certify_morphism(const MorphismSpec& m, int bound,
                                     const ResourceLimits& limits = {});

/// Rewrites every word of a tensor-presentation polynomial so that left
/// letters precede right letters, recording the commutator terms used:
/// f = shuffled + reconstruct(witness).
struct ShuffleResult {
  NcPoly shuffled;
  std::vector<WitnessTerm> witness;
};
ShuffleResult shuffle_normal_form(const Presentation& tensor, const NcPoly& f);

/// Composite of two morphism specs (g after f) as a spec from f.source to g.target.
MorphismSpec compose(const MorphismSpec& f, const MorphismSpec& g, std::string name = {});

}  // namespace bigalois

namespace bigalois {

/// Incremental echelon form of the bounded ideal of one presentation, grown
/// one degree at a time and reused across queries. Tensor presentations are
/// answered through their factors first.
class MembershipEngine {
 public:
  explicit MembershipEngine(PresentationPtr p, ResourceLimits limits = {});
  ~MembershipEngine();
  MembershipEngine(const MembershipEngine&) = delete;
  MembershipEngine& operator=(const MembershipEngine&) = delete;

  const PresentationPtr& presentation() const { return p_; }

  MembershipVerdict query(const NcPoly& f, int d);
  std::vector<std::uint64_t> cumulative_dims(int d);

 private:
  struct Echelon;

  MembershipVerdict query_direct(const NcPoly& f, int d);
  std::optional<std::vector<WitnessTerm>> query_tensor(const NcPoly& f, int d);
  MembershipEngine& factor(int side);

  PresentationPtr p_;
  ResourceLimits limits_;
  std::unique_ptr<Echelon> echelon_;
  std::unique_ptr<MembershipEngine> left_, right_;
};

}  // namespace bigalois
