#pragma once

#include <stdexcept>
#include <string>

namespace coco {

// Base class for all library errors.  Every failure mode that a caller can
// trigger with bad-but-well-formed input derives from this; internal
// consistency failures use InternalError.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define COCO_DEFINE_ERROR(NAME)                                    \
  class NAME : public Error {                                      \
   public:                                                         \
    explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
  }

// geometry
COCO_DEFINE_ERROR(EmptyIntersection);
COCO_DEFINE_ERROR(Unbounded);
COCO_DEFINE_ERROR(DimensionMismatch);

// cones
COCO_DEFINE_ERROR(NotPointed);
COCO_DEFINE_ERROR(NotFullDim);

// coconvex bodies
COCO_DEFINE_ERROR(AtomOutsideOmega);
COCO_DEFINE_ERROR(PositiveSupportNumber);
COCO_DEFINE_ERROR(CertificationFailed);
COCO_DEFINE_ERROR(ConeMismatch);
COCO_DEFINE_ERROR(DirectionOutsideClosure);
COCO_DEFINE_ERROR(InsufficientBound);

// measures
COCO_DEFINE_ERROR(NonpositiveMass);
COCO_DEFINE_ERROR(NonUnitAtom);
COCO_DEFINE_ERROR(TooManyAtoms);
COCO_DEFINE_ERROR(MissingValue);

// solver
COCO_DEFINE_ERROR(NegativeEndpoint);

// stability harness
COCO_DEFINE_ERROR(MarginTooSmall);

// file / schema validation
COCO_DEFINE_ERROR(ValidationError);

// violated internal invariant (a bug, not a caller error)
COCO_DEFINE_ERROR(InternalError);

#undef COCO_DEFINE_ERROR

}  // namespace coco
