#ifndef YNV_ERRORS_HPP
#define YNV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ynv {

// Error taxonomy shared by the C++ core and the C API (which maps each
// exception type to a stable error code).
enum class errc : int {
    ok = 0,
    not_positive_definite,
    not_primitive,
    disc_mismatch,
    not_fundamental,
    even_ramification,
    level_not_divisible,
    incomplete_class_set,
    irrational_eigensystem,
    no_admissible_pair,
    atkin_lehner_mismatch,
    zero_lift,
    not_eigen,
    insufficient_depth,
    depth_exceeded,
    anchor_not_found,
    ramified_overlap,
    precision_unreachable,
    bad_residue,
    not_divisible_by_4,
    bad_input,
    io_error,
    internal = 99,
};

class error : public std::runtime_error {
  public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

#define YNV_DEFINE_ERROR(Name, Code)                                          \
    class Name : public error {                                               \
      public:                                                                  \
        explicit Name(const std::string& msg) : error(errc::Code, msg) {}      \
    }

YNV_DEFINE_ERROR(not_positive_definite_error, not_positive_definite);
YNV_DEFINE_ERROR(not_primitive_error, not_primitive);
YNV_DEFINE_ERROR(disc_mismatch_error, disc_mismatch);
YNV_DEFINE_ERROR(not_fundamental_error, not_fundamental);
YNV_DEFINE_ERROR(even_ramification_error, even_ramification);
YNV_DEFINE_ERROR(level_not_divisible_error, level_not_divisible);
YNV_DEFINE_ERROR(incomplete_class_set_error, incomplete_class_set);
YNV_DEFINE_ERROR(irrational_eigensystem_error, irrational_eigensystem);
YNV_DEFINE_ERROR(atkin_lehner_mismatch_error, atkin_lehner_mismatch);
YNV_DEFINE_ERROR(zero_lift_error, zero_lift);
YNV_DEFINE_ERROR(not_eigen_error, not_eigen);
YNV_DEFINE_ERROR(insufficient_depth_error, insufficient_depth);
YNV_DEFINE_ERROR(depth_exceeded_error, depth_exceeded);
YNV_DEFINE_ERROR(anchor_not_found_error, anchor_not_found);
YNV_DEFINE_ERROR(ramified_overlap_error, ramified_overlap);
YNV_DEFINE_ERROR(precision_unreachable_error, precision_unreachable);
YNV_DEFINE_ERROR(bad_residue_error, bad_residue);
YNV_DEFINE_ERROR(not_divisible_by_4_error, not_divisible_by_4);
YNV_DEFINE_ERROR(bad_input_error, bad_input);
YNV_DEFINE_ERROR(io_error_error, io_error);

#undef YNV_DEFINE_ERROR

} // namespace ynv

#endif
