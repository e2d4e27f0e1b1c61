#include <pslearn/samplegen.hpp>
#include <pslearn/semantics.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <utility>

namespace pslearn
{

sample generate( gen_spec const& spec )
{
  if ( spec.budget < 2u )
    throw std::invalid_argument( "the word budget must be at least 2" );
  if ( spec.max_length < 1u )
    throw std::invalid_argument( "the length bound must be at least 1" );
  if ( spec.propositions.empty() )
    throw std::invalid_argument( "at least one proposition is required" );
  evaluator const eval( spec.seed, spec.propositions );

  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for ( std::size_t v = 1u; v <= spec.max_length; ++v )
    for ( std::size_t u = 0u; u + v <= spec.max_length; ++u )
      shapes.emplace_back( u, v );

  auto const num_props = spec.propositions.size();
  auto const mask = num_props >= 64u ? ~std::uint64_t{ 0u } : ( std::uint64_t{ 1u } << num_props ) - 1u;
  std::mt19937_64 rng( spec.rng_seed );
  std::uniform_int_distribution<std::size_t> pick_shape( 0u, shapes.size() - 1u );
  auto const draw_word = [&]( std::size_t length ) {
    finite_word w( length );
    for ( auto& a : w )
      a.bits = rng() & mask;
    return w;
  };

  std::set<lasso_word> canonical;
  std::vector<lasso_word> words;
  for ( std::size_t k = 0u; k < spec.budget; ++k )
  {
    auto const [u, v] = shapes[pick_shape( rng )];
    auto prefix = draw_word( u );
    auto period = draw_word( v );
    lasso_word word( std::move( prefix ), std::move( period ) );
    if ( canonical.insert( normalize( word ) ).second )
      words.push_back( std::move( word ) );
  }
  std::sort( words.begin(), words.end(), []( lasso_word const& a, lasso_word const& b ) {
    if ( a.length() != b.length() )
      return a.length() < b.length();
    return a < b;
  } );

  std::vector<lasso_word> positives;
  std::vector<lasso_word> negatives;
  for ( auto& w : words )
    ( eval.evaluate( w ) ? positives : negatives ).push_back( std::move( w ) );
  if ( positives.empty() || negatives.empty() )
    throw sample_error( std::string( "every sampled word " ) + ( positives.empty() ? "violates" : "satisfies" ) +
                        " the seed formula " + to_string( spec.seed ) );
  if ( spec.balance == balance_policy::equalize )
  {
    auto const keep = std::min( positives.size(), negatives.size() );
    positives.erase( positives.begin() + static_cast<std::ptrdiff_t>( keep ), positives.end() );
    negatives.erase( negatives.begin() + static_cast<std::ptrdiff_t>( keep ), negatives.end() );
  }
  return sample( spec.propositions, std::move( positives ), std::move( negatives ) );
}

sample succinctness_family( std::size_t n, bool swap )
{
  if ( n < 1u )
    throw std::invalid_argument( "the family index must be at least 1" );
  symbol p;
  p.set( 0u );
  auto const word = [&]( std::size_t copies ) {
    finite_word prefix( copies, p );
    prefix.push_back( symbol{} );
    return lasso_word( std::move( prefix ), finite_word{ p } );
  };
  std::vector<lasso_word> positives{ word( 2u * n ) };
  std::vector<lasso_word> negatives{ word( 2u * n + 1u ) };
  if ( swap )
    std::swap( positives, negatives );
  return sample( proposition_set( { "p" } ), std::move( positives ), std::move( negatives ) );
}

} // namespace pslearn
