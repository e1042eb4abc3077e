import { describe, expect, it } from 'vitest';

import { MachineParseError, minTransitionCoverage, parseMachine } from '../src/machine.js';

const MACHINE = [
  'SFST v1',
  '# sigma: 0 1',
  'STATES 2',
  'START 0',
  'FINAL 0 -1',
  'FINAL 1 7',
  'TRANS 0 0 1 5',
  'TRANS 1 1 0 -1',
  '',
].join('\n');

describe('machine file reader', () => {
  it('parses states, finals and transitions', () => {
    const m = parseMachine(MACHINE);
    expect(m.nStates).toBe(2);
    expect(m.start).toBe(0);
    expect(m.finals.get(0)).toEqual([]);
    expect(m.finals.get(1)).toEqual([7]);
    expect(m.transitions.get('0,0')).toEqual({ out: [5], dst: 1 });
    expect(m.transitions.get('1,1')).toEqual({ out: [], dst: 0 });
  });

  it('rejects malformed files', () => {
    expect(() => parseMachine('STATES 1\n')).toThrow(MachineParseError);
    expect(() => parseMachine('SFST v1\nWAT 1\n')).toThrow(/unknown record/);
  });

  it('counts minimum transition coverage by path replay', () => {
    const m = parseMachine(MACHINE);
    // two inputs cross (0,0); only one crosses (1,1)
    expect(minTransitionCoverage(m, [[0], [0, 1]])).toBe(1);
    // an input the machine rejects is a hard error
    expect(() => minTransitionCoverage(m, [[1]])).toThrow(/not accepted/);
  });
});
