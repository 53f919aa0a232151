#ifndef SYMBIOSIM_RENDER_HPP
#define SYMBIOSIM_RENDER_HPP

#include "symbiosim/contact.hpp"
#include "symbiosim/io.hpp"
#include "symbiosim/percolation.hpp"
#include "symbiosim/voter.hpp"

namespace symbiosim {

// One pixel per site: closed white, open non-giant light gray, giant black.
Image render_percolation(const ClusterLabels& labels);

// Each host drawn as a b x b block (b = ceil(sqrt(N))), slot i at block cell
// (i mod b, i div b). Closed sites white, empty slots gray, symbionts black.
// Contact slots are filled in canonical order (slots are exchangeable).
Image render_contact(const SiteField& field, const HostGraph& g, const ContactState& state);

// Voter colors: type 1 black, type 2 dark gray.
Image render_voter(const SiteField& field, const HostGraph& g, const VoterState& state);

}  // namespace symbiosim

#endif
