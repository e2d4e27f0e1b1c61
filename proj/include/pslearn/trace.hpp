#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pslearn
{

/*! \brief Raised for malformed sample, formula or DIMACS text.
 *
 * Line and column are 1-based; zero means "not applicable".
 */
class parse_error : public std::runtime_error
{
public:
  parse_error( std::string const& message, std::size_t line = 0u, std::size_t column = 0u );

  std::size_t line() const noexcept { return _line; }
  std::size_t column() const noexcept { return _column; }

private:
  std::size_t _line;
  std::size_t _column;
};

/*! \brief Raised when a sample violates its invariants (overlap, emptiness). */
class sample_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Ordered, duplicate-free list of atomic propositions.
 *
 * The order is fixed at construction and defines the bit position of every
 * proposition inside a symbol.
 */
class proposition_set
{
public:
  static constexpr std::size_t max_size = 64u;

  proposition_set() = default;
  explicit proposition_set( std::vector<std::string> names );

  std::size_t size() const noexcept { return _names.size(); }
  bool empty() const noexcept { return _names.empty(); }
  std::string const& name( std::size_t index ) const { return _names.at( index ); }
  std::vector<std::string> const& names() const noexcept { return _names; }

  /*! \brief Index of `name`, or -1 when absent. */
  int index_of( std::string_view name ) const noexcept;

  bool operator==( proposition_set const& ) const = default;

private:
  std::vector<std::string> _names;
};

/*! \brief An element of 2^P stored as a bit vector over the proposition order. */
struct symbol
{
  std::uint64_t bits = 0u;

  bool has( std::size_t proposition ) const noexcept { return ( bits >> proposition ) & 1u; }
  void set( std::size_t proposition, bool value = true ) noexcept
  {
    if ( value )
      bits |= ( std::uint64_t{ 1u } << proposition );
    else
      bits &= ~( std::uint64_t{ 1u } << proposition );
  }

  auto operator<=>( symbol const& ) const = default;
};

using finite_word = std::vector<symbol>;

/*! \brief The ultimately periodic word u v^omega; the period is never empty. */
class lasso_word
{
public:
  lasso_word( finite_word prefix, finite_word period );

  finite_word const& prefix() const noexcept { return _prefix; }
  finite_word const& period() const noexcept { return _period; }

  std::size_t prefix_length() const noexcept { return _prefix.size(); }
  std::size_t period_length() const noexcept { return _period.size(); }
  /*! \brief |uv|, the number of distinct suffixes. */
  std::size_t length() const noexcept { return _prefix.size() + _period.size(); }

  /*! \brief Symbol at position j of the infinite word. */
  symbol at( std::size_t j ) const noexcept;

  auto operator<=>( lasso_word const& ) const = default;

private:
  finite_word _prefix;
  finite_word _period;
};

/* position arithmetic on u v^omega */

/*! \brief Maps position j of u v^omega to the equivalent position inside uv. */
std::size_t canonical_position( std::size_t prefix_length, std::size_t period_length, std::size_t j );

/*! \brief Position following i inside uv, wrapping from |uv|-1 back to |u|. */
std::size_t suffix_successor( std::size_t prefix_length, std::size_t period_length, std::size_t i );

/*! \brief u followed by `copies` copies of v. */
finite_word unroll( lasso_word const& word, std::size_t copies );

/*! \brief Primitive period and shortest prefix denoting the same infinite word. */
lasso_word normalize( lasso_word const& word );

/*! \brief True iff both lasso words denote the same infinite word. */
bool same_infinite_word( lasso_word const& a, lasso_word const& b );

/*! \brief Positive and negative ultimately periodic traces over shared propositions. */
class sample
{
public:
  /*! \brief Deduplicates each side; throws sample_error on overlap or when both sides are empty. */
  sample( proposition_set propositions, std::vector<lasso_word> positives, std::vector<lasso_word> negatives );

  proposition_set const& propositions() const noexcept { return _propositions; }
  std::vector<lasso_word> const& positives() const noexcept { return _positives; }
  std::vector<lasso_word> const& negatives() const noexcept { return _negatives; }
  std::size_t size() const noexcept { return _positives.size() + _negatives.size(); }

  bool operator==( sample const& ) const = default;

private:
  proposition_set _propositions;
  std::vector<lasso_word> _positives;
  std::vector<lasso_word> _negatives;
};

/*! \brief Positive and negative finite words, used for regular expression learning. */
class finite_sample
{
public:
  finite_sample( proposition_set propositions, std::vector<finite_word> positives, std::vector<finite_word> negatives );

  proposition_set const& propositions() const noexcept { return _propositions; }
  std::vector<finite_word> const& positives() const noexcept { return _positives; }
  std::vector<finite_word> const& negatives() const noexcept { return _negatives; }
  std::size_t size() const noexcept { return _positives.size() + _negatives.size(); }

  bool operator==( finite_sample const& ) const = default;

private:
  proposition_set _propositions;
  std::vector<finite_word> _positives;
  std::vector<finite_word> _negatives;
};

enum class sample_format
{
  text,
  json
};

/*! \brief Guesses the format from the first non-blank character. */
sample_format detect_format( std::string_view text );

struct parse_options
{
  /*! Replace every trace by its normal form before deduplication. */
  bool normalize = false;
};

sample parse_sample( std::string_view text, sample_format format, parse_options const& options = {} );
finite_sample parse_finite_sample( std::string_view text, sample_format format );

std::string serialize( sample const& s, sample_format format );
std::string serialize( finite_sample const& s, sample_format format );

/*! \brief Bit-string rendering used by the text format, e.g. "10" for {p} over (p,q). */
std::string format_symbol( symbol a, std::size_t num_propositions );
std::string format_word( finite_word const& word, std::size_t num_propositions );
std::string format_lasso( lasso_word const& word, std::size_t num_propositions );

} // namespace pslearn
