#!/usr/bin/env node
// Minimal SMT-LIB2 command-line front end over the z3-solver WebAssembly
// build. Reads a script from a file argument (or stdin with no argument /
// "-") and prints the solver responses. Used as the default backend where
// no native SMT solver is installed.
'use strict';

const fs = require('fs');

async function main() {
  const arg = process.argv[2];
  const text =
    arg && arg !== '-' ? fs.readFileSync(arg, 'utf8') : fs.readFileSync(0, 'utf8');

  const { init } = require('z3-solver');
  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  const out = await Z3.eval_smtlib2_string(ctx, text);
  process.stdout.write(out.endsWith('\n') || out.length === 0 ? out : out + '\n');
  process.exit(0);
}

main().catch((err) => {
  process.stderr.write(String(err) + '\n');
  process.exit(1);
});
