import { ApiClient } from "./api.js";
import { NavigatorApp } from "./app.js";
import { MoveKind } from "./types.js";

function required(id: string): Element {
    const element = document.getElementById(id);
    if (element === null) throw new Error(`missing #${id}`);
    return element;
}

const app = new NavigatorApp(new ApiClient(""), {
    map: required("map"),
    panel: required("panel"),
    breadcrumb: required("breadcrumb"),
    status: required("status"),
});

for (const kind of ["specialize", "generalize", "contrast", "complement"] as MoveKind[]) {
    required(`move-${kind}`).addEventListener("click", () => void app.performMove(kind));
}
required("move-compromise").addEventListener("click", () => app.armPairMove("compromise-with"));
required("move-commonality").addEventListener("click", () => app.armPairMove("commonality-with"));
required("back").addEventListener("click", () => app.goBack());
required("level").addEventListener("change", (event) => {
    const value = Number((event.target as HTMLSelectElement).value);
    void app.switchLevel(value);
});

void app.start(1);
