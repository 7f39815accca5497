#pragma once

#include "hslab/any_group.hpp"
#include "hslab/attacks/brute_force.hpp"
#include "hslab/attacks/group_forms.hpp"
#include "hslab/attacks/kuperberg.hpp"
#include "hslab/attacks/scenarios.hpp"
#include "hslab/attacks/simon.hpp"
#include "hslab/attacks/xor_attacks.hpp"
#include "hslab/ciphers/cbc_mac.hpp"
#include "hslab/ciphers/even_mansour.hpp"
#include "hslab/ciphers/feistel.hpp"
#include "hslab/ciphers/slide.hpp"
#include "hslab/instance.hpp"
#include "hslab/kwise.hpp"
#include "hslab/reductions/amplify.hpp"
#include "hslab/reductions/cbc_collision.hpp"
#include "hslab/reductions/cyclic_lift.hpp"
#include "hslab/reductions/emd.hpp"
#include "hslab/reductions/hsp_lifts.hpp"
#include "hslab/reductions/key_recovery.hpp"
#include "hslab/reductions/search_decision.hpp"
#include "hslab/stats.hpp"
#include "hslab/trial.hpp"
