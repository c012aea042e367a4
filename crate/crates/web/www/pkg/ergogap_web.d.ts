/* tslint:disable */
/* eslint-disable */

/**
 * `M(d)` and the level structure of the `d×d×d` ladder.
 */
export function bounds_for(d: number): string;

/**
 * Family names accepted by the other exports, with whether they take `p`.
 */
export function families(): string;

/**
 * Sweep rows for a one-parameter family over `steps + 1` points.
 */
export function sweep_family(family: string, d: number, p_start: number, p_end: number, steps: number, tol: number): string;

/**
 * Witness verdict plus the ergotropy breakdown for one state. Qubit
 * states also carry the two fixed-operator checks.
 */
export function witness_family(family: string, d: number, p: number, seed: bigint, tol: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bounds_for: (a: number) => [number, number, number, number];
    readonly families: () => [number, number];
    readonly sweep_family: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly witness_family: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
