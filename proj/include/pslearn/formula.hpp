#pragma once

#include <pslearn/trace.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pslearn
{

/*! \brief Operators of the PSL core fragment plus parser-level sugar.
 *
 * The learner only ever produces the core operators (`prop` .. `triggers`);
 * the sugar operators are accepted by the parser and removed by
 * `expand_derived`.
 */
enum class op : std::uint8_t
{
  prop,
  eps,
  neg,
  disj,
  choice,
  concat,
  star,
  next,
  until,
  triggers,
  /* sugar */
  tt,
  ff,
  conj,
  implies,
  iff,
  finally,
  globally,
};

std::size_t arity( op o ) noexcept;
bool is_core( op o ) noexcept;
char const* op_name( op o ) noexcept;

/*! \brief Raised when a term violates the PSL typing rules. */
class type_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{
struct formula_node;
}

/*! \brief Immutable, hash-consed PSL formula or regular expression.
 *
 * Structurally equal terms are represented by the same node, so equality is
 * pointer equality and shared subterms are counted once by `size`. Every
 * handle is well-typed: the factories throw `type_error` otherwise.
 *
 * Typing follows the grammar: an atomic expression is built from
 * propositions with negation and disjunction (and Boolean sugar) only and can
 * be used both as a regular expression and as a formula.
 */
class formula
{
public:
  static formula prop( std::string name );
  static formula eps();
  static formula tt();
  static formula ff();
  static formula neg( formula const& a );
  static formula disj( formula const& a, formula const& b );
  static formula conj( formula const& a, formula const& b );
  static formula implies( formula const& a, formula const& b );
  static formula iff( formula const& a, formula const& b );
  static formula choice( formula const& a, formula const& b );
  static formula concat( formula const& a, formula const& b );
  static formula star( formula const& a );
  static formula next( formula const& a );
  static formula until( formula const& a, formula const& b );
  static formula triggers( formula const& a, formula const& b );
  static formula finally( formula const& a );
  static formula globally( formula const& a );

  /*! \brief Generic factory; `right`/`left` are ignored beyond the arity of `o`. */
  static formula make( op o, formula const* left, formula const* right, std::string name = {} );

  op kind() const noexcept;
  std::string const& name() const noexcept;
  formula left() const noexcept;
  formula right() const noexcept;

  bool is_atomic() const noexcept;
  bool is_regex() const noexcept;
  bool is_psl() const noexcept;
  /*! \brief No sugar operator occurs anywhere in the term. */
  bool is_core() const noexcept;
  /*! \brief Only propositions, negation, disjunction, next and until occur. */
  bool is_ltl() const noexcept;

  std::size_t hash() const noexcept;
  detail::formula_node const* id() const noexcept { return _node; }

  bool operator==( formula const& other ) const noexcept { return _node == other._node; }

private:
  explicit formula( detail::formula_node const* node ) : _node( node ) {}

  detail::formula_node const* _node;
};

/*! \brief Number of unique subformulas and subexpressions. */
std::size_t size( formula const& f );

/*! \brief All distinct subterms, children before parents (post-order). */
std::vector<formula> subterms( formula const& f );

/*! \brief Names of the propositions occurring in `f`, in first-occurrence order. */
std::vector<std::string> propositions_of( formula const& f );

/*! \brief Parses the ASCII formula grammar; throws parse_error or type_error. */
formula parse_formula( std::string_view text );

/*! \brief Prints with the minimal parentheses the precedence rules require. */
std::string to_string( formula const& f );

/*! \brief Rewrites sugar into core operators; `tt` becomes `anchor | !anchor`. */
formula expand_derived( formula const& f, std::string const& anchor );

/* syntax DAGs */

/*! \brief A node label: an operator, with the proposition index for `op::prop`. */
struct label
{
  op kind = op::prop;
  int proposition = -1;

  bool operator==( label const& ) const = default;
};

/*! \brief Core labels in the fixed variable order: eps, operators, then propositions. */
std::vector<label> core_labels( std::size_t num_propositions );

bool is_regex_label( label l ) noexcept;
bool is_psl_label( label l ) noexcept;
bool is_atomic_label( label l ) noexcept;

/*! \brief Syntax DAG with nodes 1..n; children have smaller ids, the root is n. */
struct syntax_dag
{
  struct node
  {
    label lbl;
    int left = 0;
    int right = 0;
  };

  /*! Index 0 is unused. */
  std::vector<node> nodes;

  int size() const noexcept { return static_cast<int>( nodes.size() ) - 1; }
};

/*! \brief A DAG indexed for the encoder: nodes 1..regex_nodes carry regular
 * expression semantics, the rest formula semantics.
 */
struct indexed_dag
{
  syntax_dag dag;
  int regex_nodes = 0;
};

/*! \brief Indexes the DAG of `f` with every regular-expression-context node first.
 *
 * With `all_regex` every node is put in the regular expression part (for
 * learning regular expressions over finite words).
 */
indexed_dag index_formula( formula const& f, proposition_set const& props, bool all_regex = false );

/*! \brief Raised when a variable assignment does not describe a syntax DAG. */
class decode_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Values of the structural variables x_{k,lambda}, l_{k,l} and r_{k,l}.
 *
 * `labels[k][c]` refers to `core_labels(...)[c]`; `left[k][l]`/`right[k][l]`
 * are defined for 1 <= l < k. Row 0 is unused.
 */
struct structure_assignment
{
  int n = 0;
  std::vector<std::vector<bool>> labels;
  std::vector<std::vector<bool>> left;
  std::vector<std::vector<bool>> right;

  static structure_assignment empty( int n, std::size_t num_labels );
};

/*! \brief Reads the syntax DAG off a structural assignment (exact multiplicities required). */
syntax_dag decode_dag( structure_assignment const& assignment, proposition_set const& props );

/*! \brief Formula rooted at node n; throws decode_error on typing violations. */
formula dag_to_formula( syntax_dag const& dag, proposition_set const& props );

/*! \brief Decodes a structural assignment into the formula rooted at node n.
 *
 * With `formula_root` set, a root that is not a PSL formula (e.g. eps or a
 * proper regular expression) is rejected.
 */
formula decode( structure_assignment const& assignment, proposition_set const& props, bool formula_root );

/*! \brief Position of `l` inside `core_labels(num_propositions)`. */
std::size_t label_index( label l, std::size_t num_propositions ) noexcept;

/*! \brief Structural assignment of an indexed DAG (unused child slots point to node 1). */
structure_assignment assignment_of( syntax_dag const& dag, std::size_t num_propositions );

} // namespace pslearn

template<>
struct std::hash<pslearn::formula>
{
  std::size_t operator()( pslearn::formula const& f ) const noexcept { return f.hash(); }
};
