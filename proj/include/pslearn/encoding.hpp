#pragma once

#include <pslearn/cnf.hpp>
#include <pslearn/formula.hpp>
#include <pslearn/solver.hpp>
#include <pslearn/trace.hpp>

#include <cstddef>
#include <list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pslearn
{

enum class learning_mode
{
  psl,
  ltl,
  regex
};

char const* to_string( learning_mode mode ) noexcept;
/*! \brief Accepts "psl", "ltl" and "regex"; throws std::invalid_argument otherwise. */
learning_mode parse_mode( std::string_view text );

/*! \brief n nodes in total, of which nodes 1..m are regular-expression nodes. */
struct node_budget
{
  int n = 1;
  int m = 0;

  bool operator==( node_budget const& ) const = default;
};

/*! \brief Throws std::invalid_argument unless the budget fits the mode
 * (ltl: m = 0, psl: 0 <= m < n, regex: m = n; always n >= 1). */
void validate_budget( node_budget budget, learning_mode mode );

/*! \brief Copies of the period needed to decide triggers with m regex nodes:
 * 2^m + 1 for m >= 1 and 1 otherwise, lowered to `cap` when given. */
std::size_t unroll_bound( int m, std::optional<std::size_t> cap = std::nullopt );

/*! \brief Raised when building an instance exceeds a size or time limit. */
class budget_exceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct encoding_options
{
  /*! Upper limit on the copies of the period (the result may need re-verification). */
  std::optional<std::size_t> unroll_cap;
  /*! Exact number of copies, overriding the bound (for experiments). */
  std::optional<std::size_t> unroll_copies;
  /*! Abort with budget_exceeded beyond this many literals (0 = unlimited). */
  std::size_t max_literals = 0u;
  /*! Abort with budget_exceeded once this point in time passes. */
  std::optional<deadline> limit;
};

/*! \brief The propositional encoding for a fixed node budget.
 *
 * The constructor allocates the structural variables and emits the structural
 * constraints; every added trace contributes its own semantic variables and
 * constraints. Root literals are not asserted; see build_phi.
 */
class encoder
{
public:
  encoder( proposition_set props, node_budget budget, learning_mode mode, encoding_options options = {} );

  proposition_set const& propositions() const noexcept { return _props; }
  node_budget budget() const noexcept { return _budget; }
  learning_mode mode() const noexcept { return _mode; }
  /*! \brief Period copies b used for lasso traces. */
  std::size_t copies() const noexcept { return _copies; }
  std::size_t num_labels() const noexcept { return _labels.size(); }
  std::vector<label> const& labels() const noexcept { return _labels; }

  /*! \brief Adds the semantic constraints of a lasso trace (not in regex mode). */
  int add_trace( lasso_word const& word );
  /*! \brief Adds the semantic constraints of a finite word (regex mode only). */
  int add_trace( finite_word const& word );

  int num_traces() const noexcept { return static_cast<int>( _traces.size() ); }
  /*! \brief |uv| for lasso traces, |w| for finite words. */
  std::size_t trace_length( int trace ) const { return _traces.at( trace ).n; }
  /*! \brief |uv^b| for lasso traces, |w| for finite words. */
  std::size_t unrolled_length( int trace ) const { return _traces.at( trace ).l; }

  /*! \brief y_{0,n} for lasso traces, z_{0,|w|,n} for finite words. */
  int root_literal( int trace ) const;

  int x( int k, std::size_t label_index ) const;
  int x( int k, label lbl ) const { return x( k, label_index( lbl, _props.size() ) ); }
  int l( int k, int child ) const;
  int r( int k, int child ) const;
  int y( int trace, std::size_t i, int k ) const;
  int z( int trace, std::size_t i, std::size_t j, int k ) const;

  /*! \brief Whether label `label_index` may appear at node k under the budget and mode. */
  bool allowed( int k, std::size_t label_index ) const;

  /*! \brief Asserts a unit clause, e.g. a root literal. */
  void add_unit( int literal );

  cnf const& clauses() const noexcept { return _cnf; }
  /*! \brief Releases the clause memory, e.g. after loading a solver. */
  cnf take_clauses() { return std::exchange( _cnf, {} ); }
  variable_table const& variables() const noexcept { return _table; }

  /*! \brief Reads x/l/r from a model indexed by variable id. */
  structure_assignment extract( std::vector<bool> const& model ) const;
  /*! \brief Unit assumptions fixing every x/l/r variable to `assignment`. */
  std::vector<int> assumptions_for( structure_assignment const& assignment ) const;

private:
  struct trace_info
  {
    std::size_t prefix = 0u;
    std::size_t period = 0u;
    std::size_t n = 0u;
    std::size_t l = 0u;
    bool finite = false;
    std::vector<symbol> symbols;
    int y_base = 0;
    int z_base = 0;
  };

  int fresh( var_descriptor d );
  void add( std::initializer_list<int> clause );
  void add( std::vector<int> const& clause );
  void check_limits() const;
  /*! Fresh variable g with g <-> (a & b). */
  int define_and( int a, int b, var_descriptor d );
  /*! Appends x_{child,lambda} for every atomic label lambda. */
  void append_atomic_labels( int child, std::vector<int>& clause ) const;
  void emit_structural();
  void emit_regex_semantics( int trace );
  void emit_psl_semantics( int trace );
  std::size_t triangle( trace_info const& t ) const { return ( t.l + 1u ) * ( t.l + 2u ) / 2u; }
  int child_value( int trace, int child, std::size_t i ) const;

  proposition_set _props;
  node_budget _budget;
  learning_mode _mode;
  encoding_options _options;
  std::size_t _copies = 1u;
  std::vector<label> _labels;
  variable_table _table;
  cnf _cnf;
  int _x_base = 0;
  int _l_base = 0;
  int _r_base = 0;
  std::vector<trace_info> _traces;
};

/*! \brief Structural constraints, every trace, and the root literals
 * (positive for P, negated for N). */
encoder build_phi( sample const& s, node_budget budget, learning_mode mode, encoding_options options = {} );
/*! \brief Regex-mode instance over finite words with all n nodes regex nodes. */
encoder build_phi( finite_sample const& s, int n, encoding_options options = {} );

/*! \brief Solves the single-trace instance with the structure of `phi` fixed by
 * assumptions and returns the value of the root literal.
 *
 * In psl/ltl mode `phi` must be a formula; in regex mode a regular expression
 * matched against the whole finite word. Throws std::invalid_argument when the
 * structure is rejected by the typing constraints.
 */
bool check_structure_fixed( formula const& phi, lasso_word const& word, proposition_set const& props,
                            learning_mode mode = learning_mode::psl, encoding_options options = {} );
bool check_structure_fixed( formula const& rho, finite_word const& word, proposition_set const& props );

/*! \brief check_structure_fixed with incremental solvers cached per
 * (n, m, trace), for checking many formulas against the same traces.
 */
class structure_checker
{
public:
  structure_checker( proposition_set props, learning_mode mode = learning_mode::psl, encoding_options options = {},
                     std::size_t capacity = 4u );
  ~structure_checker();

  /*! \brief With `verify_forced`, also proves that the root value is implied
   * by the structure (the negation is refuted). */
  bool check( formula const& phi, lasso_word const& word, bool verify_forced = false );

private:
  struct entry;

  entry& instance( node_budget budget, lasso_word const& word );

  proposition_set _props;
  learning_mode _mode;
  encoding_options _options;
  std::size_t _capacity;
  std::list<std::unique_ptr<entry>> _entries;
};

} // namespace pslearn
