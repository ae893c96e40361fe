#pragma once

// Exact Wirtinger calculus on hash-consed expression DAGs.
//
// An expression is a real-analytic function of independent variables
// z_0..z_{n-1} (holomorphic) and zbar_0..zbar_{n-1} (antiholomorphic).
// Derivatives treat the two blocks as unrelated symbols, so
// d(zbar_j)/d(z_i) = 0. Evaluation takes an Assignment that supplies both
// blocks separately: the diagonal assignment sets zbar = conj(z), an
// arbitrary second block gives the polarized (duplicated-variable) extension.
//
// Nodes are interned in a process-wide table guarded by a mutex; an Expr is a
// pointer into that table, so structural equality is pointer equality.
// Compiled Programs copy what they need and evaluate without locking.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kahler::sym {

using Complex = std::complex<double>;

enum class Kind : std::uint8_t {
  Constant,
  HolVar,
  AntiVar,
  Sum,
  Product,
  Quotient,  // only accepted by build(); stored as Product with a -1 power
  Power,
  Log,
  Exp,
};

enum class VarKind : std::uint8_t { Hol, Anti };

/// Exponent of a Power node; sqrt is {1, 2}. Always normalized: den > 0, gcd 1.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  [[nodiscard]] bool is_integer() const { return den == 1; }
  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

[[nodiscard]] Rational make_rational(std::int64_t num, std::int64_t den);

/// Maximum number of variables per block.
inline constexpr int kMaxVars = 64;

struct Node;

class Expr {
 public:
  Expr();  // constant 0
  Expr(double c);             // NOLINT(google-explicit-constructor)
  Expr(Complex c);            // NOLINT(google-explicit-constructor)
  explicit Expr(const Node* node) : node_(node) {}

  [[nodiscard]] const Node& node() const { return *node_; }
  [[nodiscard]] const Node* get() const { return node_; }

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool is_constant() const { return kind() == Kind::Constant; }
  [[nodiscard]] bool is_constant(Complex c) const;
  [[nodiscard]] Complex value() const;
  [[nodiscard]] int index() const;
  [[nodiscard]] Rational exponent() const;
  [[nodiscard]] const std::vector<Expr>& children() const;
  [[nodiscard]] std::uint64_t hash() const;

  /// Bitmask of holomorphic (resp. antiholomorphic) variables this depends on.
  [[nodiscard]] std::uint64_t hol_mask() const;
  [[nodiscard]] std::uint64_t anti_mask() const;
  [[nodiscard]] bool is_holomorphic() const { return anti_mask() == 0; }

  friend bool operator==(Expr a, Expr b) { return a.node_ == b.node_; }

 private:
  const Node* node_;
};

struct Node {
  Kind kind;
  Complex value;     // Constant
  int index;         // HolVar / AntiVar
  Rational exponent; // Power
  std::vector<Expr> children;
  std::uint64_t hash;
  std::uint64_t id;  // creation order, tie-breaker for canonical sorting
  std::uint64_t hol_mask;
  std::uint64_t anti_mask;
};

// --- construction -----------------------------------------------------------

[[nodiscard]] Expr constant(Complex c);
[[nodiscard]] Expr hol(int i);
[[nodiscard]] Expr antihol(int i);
[[nodiscard]] Expr sum(std::vector<Expr> terms);
[[nodiscard]] Expr product(std::vector<Expr> factors);
[[nodiscard]] Expr quotient(Expr num, Expr den);
[[nodiscard]] Expr power(Expr base, Rational exponent);
[[nodiscard]] Expr power(Expr base, std::int64_t exponent);
[[nodiscard]] Expr sqrt(Expr base);
[[nodiscard]] Expr log(Expr arg);
[[nodiscard]] Expr exp(Expr arg);

/// Generic constructor for interior kinds; throws ConstructionError when the
/// child count does not match the kind (Power takes `exponent`).
[[nodiscard]] Expr build(Kind kind, std::vector<Expr> children, Rational exponent = {1, 1});

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

/// z_0 zbar_0 + ... + z_{n-1} zbar_{n-1}
[[nodiscard]] Expr norm_squared(int n, int offset = 0);

// --- transformations --------------------------------------------------------

/// Exact partial derivative with respect to z_i (Hol) or zbar_i (Anti).
[[nodiscard]] Expr wirtinger(Expr e, int i, VarKind kind);

/// Replace variables: hol var i -> hol_images[i], anti var i -> anti_images[i].
/// Indices beyond the provided spans are left untouched.
[[nodiscard]] Expr substitute(Expr e, std::span<const Expr> hol_images, std::span<const Expr> anti_images);

/// Structural conjugate: swaps the two blocks and conjugates constants.
/// Agrees with complex conjugation wherever no argument sits on a branch cut.
[[nodiscard]] Expr conjugate(Expr e);

/// Number of distinct DAG nodes reachable from e.
[[nodiscard]] std::size_t dag_size(Expr e);

[[nodiscard]] std::string to_string(Expr e, int max_depth = 6);

// --- evaluation -------------------------------------------------------------

/// Values for both variable blocks.
struct Assignment {
  std::vector<Complex> z;
  std::vector<Complex> zbar;

  [[nodiscard]] int n() const { return static_cast<int>(z.size()); }

  /// zbar = conj(z): evaluation of the real-analytic function itself.
  [[nodiscard]] static Assignment diagonal(std::span<const Complex> z);
  /// Independent second block: evaluation of the polarized extension.
  [[nodiscard]] static Assignment polarized(std::span<const Complex> z, std::span<const Complex> wbar);
};

/// Linearized, lock-free evaluator for one or more expressions sharing a DAG.
class Program {
 public:
  Program() = default;
  explicit Program(std::span<const Expr> roots);
  explicit Program(Expr root);

  [[nodiscard]] std::vector<Complex> eval(const Assignment& a) const;
  /// Writes one value per root into `out` (must have num_roots() entries).
  void eval_into(const Assignment& a, std::span<Complex> out) const;
  [[nodiscard]] Complex eval1(const Assignment& a) const;

  [[nodiscard]] std::size_t num_roots() const { return roots_.size(); }
  [[nodiscard]] std::size_t num_instructions() const { return code_.size(); }

 private:
  struct Instr {
    Kind kind;
    int index;
    Rational exponent;
    Complex value;
    std::uint32_t first_child;
    std::uint32_t num_children;
    const Node* source;
  };
  std::vector<Instr> code_;
  std::vector<std::uint32_t> child_slots_;
  std::vector<std::uint32_t> roots_;
};

/// One-shot evaluation (compiles a temporary Program).
[[nodiscard]] Complex eval(Expr e, const Assignment& a);

/// Tolerance used for "argument on the closed negative real half-line".
inline constexpr double kBranchCutTol = 1e-12;
[[nodiscard]] bool on_branch_cut(Complex x);

// --- polarization and Taylor data ------------------------------------------

/// The duplicated-variable extension psi~(z, wbar). The antiholomorphic block
/// of an Assignment is already independent, so the DAG is shared unchanged.
struct Polarized {
  Expr expr;
  [[nodiscard]] Complex eval(std::span<const Complex> z, std::span<const Complex> wbar) const;
};

[[nodiscard]] Polarized polarize(Expr e);

struct PureCoefficient {
  VarKind kind;             // Hol: coefficient of (z-c)^alpha, Anti: of (zbar-cbar)^alpha
  std::vector<int> alpha;   // multi-index, |alpha| >= 1
  Complex value;
};

/// All purely holomorphic and purely antiholomorphic Taylor coefficients of e
/// at `center` with 1 <= |alpha| <= max_order (max_order <= 6).
[[nodiscard]] std::vector<PureCoefficient> taylor_pure_coeffs(Expr e, const Assignment& center, int max_order);

/// Sampling test for the real-on-diagonal property:
/// |imag| <= 1e-12 (1 + |real|) at `samples` diagonal points of the ball of
/// radius `radius` in C^n. Points where evaluation fails are skipped.
[[nodiscard]] bool real_on_diagonal(Expr e, int n, int samples = 32, double radius = 1.5, std::uint64_t seed = 7);

}  // namespace kahler::sym
