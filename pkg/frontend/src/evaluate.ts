/**
 * Evaluation report: exact-match sequence accuracy and token accuracy as
 * key=value text, with an optional minimum-transition-coverage line when the
 * generating machine and the training split are supplied alongside.
 */

import { Pair } from './dataset.js';
import { Machine, minTransitionCoverage } from './machine.js';
import { Seq2Seq } from './model.js';
import { evaluatePairs } from './train.js';

export interface CoverageJoin {
  machine: Machine;
  trainPairs: Pair[];
}

export function evaluationReport(
  model: Seq2Seq,
  testPairs: Pair[],
  join?: CoverageJoin,
): string {
  const acc = evaluatePairs(model, testPairs);
  const lines = [
    `test_pairs=${testPairs.length}`,
    `sequence_accuracy=${acc.sequenceAccuracy.toFixed(4)}`,
    `token_accuracy=${acc.tokenAccuracy.toFixed(4)}`,
  ];
  if (join !== undefined) {
    const min = minTransitionCoverage(join.machine, join.trainPairs.map((p) => p.input));
    lines.push(`train_min_transition_coverage=${min}`);
  }
  return lines.join('\n') + '\n';
}
