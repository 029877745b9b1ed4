#pragma once

#include "mfa/symbol.hpp"
#include "mfa/stack_monoid.hpp"
#include "mfa/monoid.hpp"
#include "mfa/automaton.hpp"
#include "mfa/rational_expression.hpp"
#include "mfa/dfa.hpp"
#include "mfa/transducer.hpp"
#include "mfa/family.hpp"
#include "mfa/pda.hpp"
#include "mfa/symmetric.hpp"
#include "mfa/grammar.hpp"
#include "mfa/pushdown.hpp"
#include "mfa/group.hpp"
#include "mfa/io.hpp"
#include "mfa/fixtures.hpp"
