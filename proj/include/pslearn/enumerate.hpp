#pragma once

#include <pslearn/encoding.hpp>
#include <pslearn/formula.hpp>
#include <pslearn/trace.hpp>

#include <cstddef>
#include <vector>

namespace pslearn
{

/*! \brief All well-typed core terms of size at most `max_size`, ordered by size.
 *
 * In psl mode every formula (the roots may use any core operator), in ltl mode
 * only LTL formulas, and in regex mode only regular expressions are returned.
 * Terms are built bottom-up with sharing, so the size is the DAG size.
 */
std::vector<formula> enumerate_formulas( proposition_set const& props, std::size_t max_size, learning_mode mode );

} // namespace pslearn
