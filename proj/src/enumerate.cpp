#include <pslearn/enumerate.hpp>

#include <algorithm>
#include <unordered_set>

namespace pslearn
{

std::vector<formula> enumerate_formulas( proposition_set const& props, std::size_t max_size, learning_mode mode )
{
  std::vector<op> unary;
  std::vector<op> binary;
  switch ( mode )
  {
  case learning_mode::ltl:
    unary = { op::neg, op::next };
    binary = { op::disj, op::until };
    break;
  case learning_mode::regex:
    unary = { op::neg, op::star };
    binary = { op::disj, op::choice, op::concat };
    break;
  case learning_mode::psl:
    unary = { op::neg, op::star, op::next };
    binary = { op::disj, op::choice, op::concat, op::until, op::triggers };
    break;
  }

  /* levels[s] holds every term of size exactly s */
  std::vector<std::vector<formula>> levels( max_size + 1u );
  std::unordered_set<formula> seen;
  auto const offer = [&]( formula const& f ) {
    auto const s = size( f );
    if ( s <= max_size && seen.insert( f ).second )
      levels[s].push_back( f );
  };
  if ( max_size >= 1u )
  {
    for ( auto const& name : props.names() )
      offer( formula::prop( name ) );
    if ( mode != learning_mode::ltl )
      offer( formula::eps() );
  }

  for ( std::size_t s = 2u; s <= max_size; ++s )
  {
    std::vector<std::pair<formula, std::size_t>> smaller;
    for ( std::size_t t = 1u; t < s; ++t )
      for ( auto const& f : levels[t] )
        smaller.emplace_back( f, t );
    for ( auto const& a : levels[s - 1u] )
      for ( auto const o : unary )
      {
        try
        {
          offer( formula::make( o, &a, nullptr ) );
        }
        catch ( type_error const& )
        {
        }
      }
    for ( auto const& [a, size_a] : smaller )
      for ( auto const& [b, size_b] : smaller )
      {
        /* sharing puts the size of op(a, b) between max + 1 and sum + 1 */
        if ( size_a + size_b + 1u < s || std::max( size_a, size_b ) + 1u > s )
          continue;
        for ( auto const o : binary )
        {
          try
          {
            auto const f = formula::make( o, &a, &b );
            if ( size( f ) == s )
              offer( f );
          }
          catch ( type_error const& )
          {
          }
        }
      }
  }

  std::vector<formula> result;
  for ( auto const& level : levels )
    for ( auto const& f : level )
    {
      bool const keep = mode == learning_mode::regex ? f.is_regex() : ( mode == learning_mode::ltl ? f.is_psl() && f.is_ltl() : f.is_psl() );
      if ( keep )
        result.push_back( f );
    }
  return result;
}

} // namespace pslearn
