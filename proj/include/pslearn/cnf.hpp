#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pslearn
{

/*! \brief Kinds of propositional variables in the learning encoding. */
enum class var_kind : std::uint8_t
{
  x,  ///< node k carries label lambda
  l,  ///< left child of node k is node l
  r,  ///< right child of node k is node l
  y,  ///< formula at node k holds at suffix i of a trace
  z,  ///< expression at node k matches the infix [i, j) of a trace
  aux ///< definition variable introduced by the clause translation
};

/*! \brief Families of auxiliary variables, for diagnostics only. */
enum class aux_family : std::uint8_t
{
  none,
  left_z,
  right_z,
  left_y,
  right_y,
  second_operand,
  split,
  until_prefix,
  until_term,
  trigger_violation,
};

/*! \brief Identifies a variable.
 *
 * x: node, a = label index. l/r: node, a = child. y: trace, node, a = i.
 * z: trace, node, a = i, b = j. aux: family, trace, node, a, b, c.
 */
struct var_descriptor
{
  var_kind kind = var_kind::aux;
  aux_family family = aux_family::none;
  int trace = -1;
  int node = 0;
  int a = 0;
  int b = 0;
  int c = 0;

  bool operator==( var_descriptor const& ) const = default;
};

std::string to_string( var_descriptor const& d );

/*! \brief Dense id assignment starting at 1, with reverse lookup. */
class variable_table
{
public:
  int add( var_descriptor const& d );

  int size() const noexcept { return static_cast<int>( _descriptors.size() ); }
  var_descriptor const& descriptor( int id ) const { return _descriptors.at( static_cast<std::size_t>( id - 1 ) ); }
  std::size_t count( var_kind kind ) const noexcept { return _counts[static_cast<std::size_t>( kind )]; }

  /*! \brief Tab-separated "id<TAB>descriptor" lines. */
  void write_tsv( std::ostream& os ) const;

private:
  std::vector<var_descriptor> _descriptors;
  std::size_t _counts[6] = {};
};

/*! \brief Clause set over variables 1..num_vars, stored flat and 0-terminated. */
class cnf
{
public:
  int num_vars() const noexcept { return _num_vars; }
  std::size_t num_clauses() const noexcept { return _num_clauses; }
  std::vector<int> const& literals() const noexcept { return _literals; }

  /*! \brief Grows the variable count to at least `n`. */
  void reserve_vars( int n ) noexcept;
  void add_clause( std::span<int const> clause );
  void add_clause( std::initializer_list<int> clause ) { add_clause( std::span<int const>( clause.begin(), clause.size() ) ); }

  std::vector<std::vector<int>> clauses() const;

  bool operator==( cnf const& ) const = default;

private:
  int _num_vars = 0;
  std::size_t _num_clauses = 0u;
  std::vector<int> _literals;
};

/*! \brief Writes DIMACS; with a table, one "c <id> <descriptor>" comment per variable first. */
void export_dimacs( cnf const& formula, std::ostream& os, variable_table const* table = nullptr );
std::string export_dimacs( cnf const& formula, variable_table const* table = nullptr );

/*! \brief Parses DIMACS CNF; comments are skipped. Throws parse_error. */
cnf parse_dimacs( std::string_view text );

} // namespace pslearn
