/* tslint:disable */
/* eslint-disable */

/**
 * `{quiver, seq, D}` to the tropical word and its truncated series.
 */
export function _eval(body: string): string;

/**
 * `{quiver, seq1, seq2, D}` to the frozen isomorphism and series verdict.
 */
export function compare(body: string): string;

/**
 * `{quiver}` to the framed quiver state.
 */
export function frame(body: string): string;

/**
 * `{framed, k}` to the mutated state with the c-vector and its sign.
 */
export function mutate(body: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly _eval: (a: number, b: number) => [number, number, number, number];
    readonly compare: (a: number, b: number) => [number, number, number, number];
    readonly frame: (a: number, b: number) => [number, number, number, number];
    readonly mutate: (a: number, b: number) => [number, number, number, number];
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
