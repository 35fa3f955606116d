#pragma once

#include "loopforge/frob2tqft/frobenius.hpp"

#include <random>
#include <vector>

namespace testsupport {

using loopforge::frob2tqft::CobordismWord;
using loopforge::frob2tqft::Token;
using loopforge::frob2tqft::token_inputs;
using loopforge::frob2tqft::token_outputs;

// Random well-wired word with at most three wires between layers.
inline CobordismWord random_word(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nlayers(1, 6);
    std::uniform_int_distribution<std::size_t> start(0, 2);
    CobordismWord w;
    std::size_t wires = start(rng);
    const int n = nlayers(rng);
    for (int k = 0; k < n; ++k) {
        std::vector<Token> layer;
        std::size_t left = wires, out = 0;
        while (left > 0 || layer.empty()) {
            std::vector<Token> options;
            for (Token t : {Token::Pants, Token::Copants, Token::CapTrace, Token::CapUnit, Token::Pairing,
                            Token::Copairing, Token::Cylinder, Token::Swap})
                if (token_inputs(t) <= left && out + token_outputs(t) + (left - token_inputs(t)) <= 3 &&
                    !(token_inputs(t) == 0 && left > 0 && layer.size() > 3))
                    options.push_back(t);
            std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
            const Token t = options[pick(rng)];
            layer.push_back(t);
            left -= token_inputs(t);
            out += token_outputs(t);
        }
        w.layers.push_back(layer);
        wires = out;
    }
    return w;
}

}  // namespace testsupport
