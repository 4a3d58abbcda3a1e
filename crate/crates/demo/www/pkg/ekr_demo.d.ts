/* tslint:disable */
/* eslint-disable */

/**
 * Disjoint pairs of the lex and colex segments for every `s`, with the
 * averaging upper bound and the spectral lower bound.
 */
export function disjoint_curve(n: number, k: number): string;

/**
 * Eigenvalues of the Kneser graph `K(n,k)` with multiplicities.
 */
export function kneser_spectrum(n: number, k: number): string;

/**
 * The lex segment of size `s` with its count, cover and structure.
 */
export function lex_family(n: number, k: number, s: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly disjoint_curve: (a: number, b: number) => [number, number];
    readonly kneser_spectrum: (a: number, b: number) => [number, number];
    readonly lex_family: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
