package app.ui;

import android.database.Cursor;
import android.widget.CursorAdapter;

public class SwapCursorDiscarded {
    private CursorAdapter adapter;

    public void reload(Cursor fresh) {
        adapter.swapCursor(fresh);
        adapter.notifyDataSetChanged();
    }
}
