#pragma once

#include <pslearn/formula.hpp>
#include <pslearn/trace.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace pslearn
{

/*! \brief Whether symbol `a` belongs to the denotation of the atomic expression `xi`.
 *
 * Throws std::invalid_argument when `xi` is not atomic or mentions a
 * proposition outside `props`.
 */
bool atom_denotation( formula const& xi, symbol a, proposition_set const& props );

/*! \brief w[i,j) |- rho for every 0 <= i <= j <= |w|, for the root and all subterms. */
class match_table
{
public:
  match_table( formula const& rho, finite_word const& word, proposition_set const& props );

  std::size_t word_length() const noexcept { return _length; }

  /*! \brief Throws std::out_of_range unless i <= j <= |w|. */
  bool at( std::size_t i, std::size_t j ) const;
  bool at( formula const& subterm, std::size_t i, std::size_t j ) const;

private:
  std::size_t cell( std::size_t i, std::size_t j ) const;

  formula _root;
  std::size_t _length;
  std::unordered_map<formula, std::vector<bool>> _rows;
};

bool match( formula const& rho, finite_word const& word, std::size_t i, std::size_t j, proposition_set const& props );

/*! \brief Full-word matching, the consistency notion for finite words. */
bool match_full( formula const& rho, finite_word const& word, proposition_set const& props );

/*! \brief Thompson acceptor for a regular expression over 2^P.
 *
 * Shared subexpressions are expanded, so the state count is bounded by
 * 2 * (tree size) + 2. Transitions are labeled by atomic expressions.
 */
class regex_automaton
{
public:
  using state_set = std::vector<std::uint64_t>;

  regex_automaton( formula const& rho, proposition_set const& props );

  std::size_t num_states() const noexcept { return _epsilon.size(); }

  /*! \brief Epsilon closure of the initial state. */
  state_set const& initial() const noexcept { return _initial; }
  /*! \brief Successors on `a`, already epsilon-closed. */
  state_set step( state_set const& states, symbol a ) const;
  bool accepting( state_set const& states ) const noexcept;
  static bool empty( state_set const& states ) noexcept;

  bool accepts( finite_word const& word ) const;

private:
  struct edge
  {
    std::size_t atom;
    std::size_t target;
  };

  std::size_t add_state();
  std::pair<std::size_t, std::size_t> build( formula const& rho, std::unordered_map<formula, std::size_t>& atom_ids );
  void close( state_set& states ) const;

  std::vector<std::vector<std::size_t>> _epsilon;
  std::vector<std::vector<edge>> _edges;
  std::vector<formula> _atoms;
  proposition_set _props;
  std::size_t _start = 0u;
  std::size_t _accept = 0u;
  state_set _initial;
};

struct evaluation_options
{
  /*! When set, triggers are decided by a match table on u v^b instead of the
   * exact acceptor; b is `unroll_copies`, or 2^size(rho) + 1 when zero. */
  bool bounded = false;
  std::size_t unroll_copies = 0u;
};

/*! \brief Exact satisfaction of a PSL formula over lasso words.
 *
 * Construct once per formula and reuse across traces; safe to share between
 * threads.
 */
class evaluator
{
public:
  evaluator( formula const& phi, proposition_set const& props, evaluation_options options = {} );

  formula const& root() const noexcept { return _root; }

  /*! \brief Satisfaction of every suffix class: entry i is w[i,inf) |= phi for i < |uv|. */
  std::vector<bool> table( lasso_word const& word ) const;

  bool evaluate( lasso_word const& word ) const;
  bool evaluate_at( lasso_word const& word, std::size_t position ) const;

private:
  using tables = std::unordered_map<formula, std::vector<bool>>;

  std::vector<bool> triggers_exact( formula const& f, lasso_word const& word, std::vector<bool> const& rhs ) const;
  std::vector<bool> triggers_bounded( formula const& f, lasso_word const& word, std::vector<bool> const& rhs ) const;
  tables compute( lasso_word const& word ) const;

  formula _root;
  proposition_set _props;
  evaluation_options _options;
  std::vector<formula> _order;
  std::unordered_map<formula, regex_automaton> _automata;
};

bool evaluate( formula const& phi, lasso_word const& word, proposition_set const& props, evaluation_options options = {} );
bool evaluate_at( formula const& phi, lasso_word const& word, std::size_t position, proposition_set const& props, evaluation_options options = {} );

/*! \brief The first trace a candidate misclassifies. */
struct consistency_witness
{
  bool positive = true;
  std::size_t index = 0u;
};

struct consistency_result
{
  bool consistent = true;
  std::optional<consistency_witness> witness;

  explicit operator bool() const noexcept { return consistent; }
};

consistency_result is_consistent( formula const& phi, sample const& s, evaluation_options options = {} );
consistency_result is_consistent( formula const& rho, finite_sample const& s );

} // namespace pslearn
