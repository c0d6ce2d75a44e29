/* tslint:disable */
/* eslint-disable */

/**
 * `A`, `σ(A)` and the verdict for a 2×2 automorphism on `[-half, half]²`.
 */
export function lattice_pair(matrix: string, half: bigint): string;

/**
 * Elements of a family (`S`, `U`, `I:3`, `RS:50`, …) in `[lo, hi]`.
 */
export function materialize(family: string, lo: bigint, hi: bigint): string;

/**
 * All ways to write `y` as an element of S (or U) plus a power of two (or a signed one).
 */
export function representations_of(y: bigint, base: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly lattice_pair: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly materialize: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly representations_of: (a: bigint, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
